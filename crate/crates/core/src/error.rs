use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid pair ({b},{r}): need 0 < b < r")]
    InvalidPair { b: i64, r: i64 },

    #[error("plurigenus is only defined for m >= 2 (got m = {m})")]
    PlurigenusDomain { m: i64 },

    #[error("plurigenus P_{m} = {value} is not an integer")]
    NonIntegralPlurigenus { m: i64, value: String },

    #[error("pair ({b},{r}) lies below the elementary tail floor 1/{cap} of the step-{n} chain")]
    UnpackRange { b: i64, r: i64, n: i64, cap: i64 },

    #[error("formal basket has non-positive volume {k3}")]
    NonPositiveVolume { k3: String },

    #[error("search exceeded the state cap {cap} (frontier size {frontier})")]
    SearchCap { cap: usize, frontier: usize },

    #[error("chain step at m = {m} is not admissible (alpha = {alpha})")]
    ChainBroken { m: i64, alpha: String },

    #[error("non-vanishing threshold is not applicable to type I_q (constant regime, m >= 7)")]
    NotApplicable,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cap too small to certify emptiness: {0}")]
    Cap(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}
