use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("element index ({n}, {m}) outside 1..={n_side}")]
    Index { n: usize, m: usize, n_side: usize },

    #[error("quadrature did not converge: relative change {rel_change:.3e} at {nodes_per_dim} nodes/dim")]
    NonConvergent { rel_change: f64, nodes_per_dim: usize },

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
}
