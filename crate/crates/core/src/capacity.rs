//! Guards for exhaustive enumerations.

/// Default bound on the number of objects an exhaustive oracle may visit.
pub const ENUMERATION_LIMIT: u128 = 1 << 20;

/// Default bound on `z` for string enumeration oracles.
pub const SOLID_ENUMERATION_Z_LIMIT: f64 = (1u64 << 16) as f64;

/// Default bound on `z` for maximal solid prefix enumeration.
pub const MAXIMAL_PREFIX_Z_LIMIT: f64 = (1u64 << 20) as f64;

/// Environment variable that raises every enumeration guard.
pub const OVERRIDE_VAR: &str = "UM_CAPACITY_OVERRIDE";

/// Returns `default`, or the override from the environment when it is larger.
pub fn limit(default: u128) -> u128 {
    match std::env::var(OVERRIDE_VAR).ok().and_then(|s| s.trim().parse::<u128>().ok()) {
        Some(v) if v > default => v,
        _ => default,
    }
}

pub(crate) fn limit_f64(default: f64) -> f64 {
    match std::env::var(OVERRIDE_VAR).ok().and_then(|s| s.trim().parse::<f64>().ok()) {
        Some(v) if v > default => v,
        _ => default,
    }
}

pub(crate) fn check(what: &'static str, needed: u128, default: u128) -> crate::Result<()> {
    let limit = limit(default);
    if needed > limit {
        return Err(crate::Error::Capacity { what, needed, limit });
    }
    Ok(())
}
