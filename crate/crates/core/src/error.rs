use thiserror::Error;

use crate::bounds::BoundsError;
use crate::clique::CliqueError;
use crate::codes::{CodeError, ParseError};
use crate::constructions::ConstructionError;
use crate::gf::GfError;
use crate::grassmann::GrassmannError;
use crate::ilp::IlpError;

/// Any error raised by the library, tagged with the module it came from.
#[derive(Debug, Error)]
pub enum Error {
    #[error("gf: {0}")]
    Gf(#[from] GfError),
    #[error("grassmann: {0}")]
    Grassmann(#[from] GrassmannError),
    #[error("codes: {0}")]
    Code(#[from] CodeError),
    #[error("codes: {0}")]
    Parse(#[from] ParseError),
    #[error("bounds: {0}")]
    Bounds(#[from] BoundsError),
    #[error("constructions: {0}")]
    Construction(#[from] ConstructionError),
    #[error("ilp: {0}")]
    Ilp(#[from] IlpError),
    #[error("clique: {0}")]
    Clique(#[from] CliqueError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}
