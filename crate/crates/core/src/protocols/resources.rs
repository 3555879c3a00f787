//! Control-operation counts from the Trotter error bounds.

use serde::{Deserialize, Serialize};

use super::Order;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Resources {
    pub trotter_steps: u64,
    pub controlled_ops: u64,
}

/// First order: `r = ceil(c t^2 ||H||^2 / eps)` and `r N` controlled Paulis.
/// Second order: `r = ceil(c (t ||H||)^{3/2} / sqrt(eps))` and `2 r N`.
pub fn estimate_resources(
    runs: usize,
    t: f64,
    norm_h: f64,
    eps: f64,
    order: Order,
    constant: f64,
) -> Result<Resources> {
    let positive = [t, norm_h, eps, constant].iter().all(|v| *v > 0.0 && v.is_finite());
    if !positive || runs == 0 {
        return Err(Error::InvalidParameter(
            "runs, time, norm, epsilon and constant must be positive".into(),
        ));
    }
    let tn = t * norm_h;
    let (raw, per_step) = match order {
        Order::First => (constant * tn * tn / eps, 1),
        Order::Second => (constant * tn.powf(1.5) / eps.sqrt(), 2),
    };
    let r = ((raw * (1.0 - 1e-12)).ceil() as u64).max(1);
    Ok(Resources {
        trotter_steps: r,
        controlled_ops: per_step * r * runs as u64,
    })
}
