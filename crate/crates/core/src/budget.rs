//! Oracle size budgets, overridable through `KERNEL_BUDGET_N`.

pub const BUDGET_ENV: &str = "KERNEL_BUDGET_N";

/// `KERNEL_BUDGET_N` when set to an integer, otherwise `default`.
pub fn oracle_budget(default: usize) -> usize {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(default)
}
