//! Exact dimension formulas: factorials, hook products, the hook-length
//! count f^nu of standard tableaux, the hook-content principal Schur value
//! s_nu(1^k), skew rectangular dimensions, and the rectangle content product
//! identity.
//!
//! Everything here is arbitrary-precision integer arithmetic; divisions are
//! asserted exact (they are, by the hook-length and hook-content theorems).

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::partition::{complement, hook_lengths, Partition, Rectangle};

static FACTORIALS: OnceLock<Mutex<Vec<BigUint>>> = OnceLock::new();
static HOOK_PRODUCTS: OnceLock<Mutex<HashMap<Vec<usize>, BigUint>>> = OnceLock::new();
static F_DIMS: OnceLock<Mutex<HashMap<Vec<usize>, BigUint>>> = OnceLock::new();

/// n!, memoized per process.
pub fn factorial(n: usize) -> BigUint {
    let table = FACTORIALS.get_or_init(|| Mutex::new(vec![BigUint::one()]));
    let mut table = table.lock().expect("factorial table poisoned");
    while table.len() <= n {
        let next = table.last().expect("table nonempty") * BigUint::from(table.len());
        table.push(next);
    }
    table[n].clone()
}

/// Binomial coefficient C(n, k); zero when k > n.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let (q, r) = factorial(n).div_rem(&(factorial(k) * factorial(n - k)));
    debug_assert!(r.is_zero());
    q
}

/// Product of the hook lengths of `nu`; 1 for the empty diagram. Memoized.
pub fn hook_product(nu: &Partition) -> BigUint {
    let table = HOOK_PRODUCTS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = table.lock().expect("hook table poisoned").get(nu.parts()) {
        return hit.clone();
    }
    let product = hook_lengths(nu)
        .into_values()
        .map(BigUint::from)
        .product::<BigUint>();
    table
        .lock()
        .expect("hook table poisoned")
        .insert(nu.parts().to_vec(), product.clone());
    product
}

/// Number of standard Young tableaux of shape `nu`: |nu|! / H_nu. Memoized.
pub fn f_dim(nu: &Partition) -> BigUint {
    let table = F_DIMS.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = table.lock().expect("f table poisoned").get(nu.parts()) {
        return hit.clone();
    }
    let (q, r) = factorial(nu.size()).div_rem(&hook_product(nu));
    assert!(r.is_zero(), "hook-length division must be exact");
    table
        .lock()
        .expect("f table poisoned")
        .insert(nu.parts().to_vec(), q.clone());
    q
}

/// Principal Schur value s_nu(1^k) via hook-content: prod (k + content) / H_nu.
/// Zero when `nu` has more than `k` rows.
pub fn gl_dim(nu: &Partition, k: usize) -> BigUint {
    if nu.len() > k {
        return BigUint::zero();
    }
    let k = k as i64;
    let mut numerator = BigUint::one();
    for c in nu.cells() {
        let factor = k + c.col as i64 - c.row as i64;
        debug_assert!(factor > 0);
        numerator *= BigUint::from(factor as u64);
    }
    let (q, r) = numerator.div_rem(&hook_product(nu));
    assert!(r.is_zero(), "hook-content division must be exact");
    q
}

/// Number of standard tableaux of the skew shape rect/lambda, computed as
/// f^{complement(lambda)}: the skew diagram rotated by 180 degrees is the
/// straight diagram of the complement.
pub fn skew_rect_dim(lambda: &Partition, rect: Rectangle) -> Result<BigUint> {
    Ok(f_dim(&complement(lambda, rect)?))
}

/// Both sides of the rectangle identity
/// prod_{boxes of the rows x cols rectangle} (rows + content) = H_rectangle,
/// the one-SSYT count of the full rectangle. Returns (content side, hook side).
pub fn verify_rect_content_identity(rect: Rectangle) -> (BigUint, BigUint) {
    let full = rect.to_partition();
    let mut content_side = BigUint::one();
    for c in full.cells() {
        let factor = rect.rows as i64 + c.col as i64 - c.row as i64;
        debug_assert!(factor > 0);
        content_side *= BigUint::from(factor as u64);
    }
    (content_side, hook_product(&full))
}

/// dim of the p-th exterior power of an (m*n)-dimensional space: C(mn, p).
pub fn dim_external_power(m: usize, n: usize, p: usize) -> Result<BigUint> {
    if m == 0 || n == 0 || p > m * n {
        return Err(Error::Domain(format!(
            "need m, n >= 1 and 0 <= p <= m*n; got m={m}, n={n}, p={p}"
        )));
    }
    Ok(binomial(m * n, p))
}
