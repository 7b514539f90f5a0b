//! Ordinary polynomial kernels behind the Laurent-ring API.

pub(crate) mod gcd;
pub(crate) mod mpoly;
pub(crate) mod zp;

pub(crate) use mpoly::MPoly;
