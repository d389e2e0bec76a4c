//! Symmetric-group character checks at desk scale: the Murnaghan-Nakayama
//! recursion as the irreducible-character oracle, the signed cycle-count
//! trace of the exterior power of C^m tensor C^n, and the exact identities
//! tying them together: restriction to the rectangular character,
//! independence of the power p, the Jucys-Murphy partial trace, and the
//! two-argument sign-twist identity.
//!
//! Cycle types are partitions of p; permutations are image tables on 0..p.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dims::{binomial, f_dim, factorial};
use crate::error::{Error, Result};
use crate::partition::{partitions_of, Partition, Rectangle};

/// Largest p for which the signed sum iterates S_p directly (8! = 40320).
pub const SIGNED_SUM_CAP: usize = 8;

/// Largest m*n for which the rectangular character table is computed.
pub const RECTANGLE_CHARACTER_CAP: usize = 12;

/// Largest (mn)^(p+1) for which the dense operator is materialized.
pub const DENSE_OPERATOR_CAP: usize = 1024;

/// Largest p for which all cycle-type pairs are checked.
pub const PAIR_CONJUGATION_CAP: usize = 5;

fn identity_perm(p: usize) -> Vec<usize> {
    (0..p).collect()
}

/// A fixed representative of the cycle type: cycles laid out consecutively.
fn canonical_perm(sigma: &Partition) -> Vec<usize> {
    let mut perm = Vec::with_capacity(sigma.size());
    let mut start = 0;
    for &len in sigma.parts() {
        for k in 0..len {
            perm.push(if k + 1 < len { start + k + 1 } else { start });
        }
        start += len;
    }
    perm
}

fn inverse_perm(g: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; g.len()];
    for (i, &gi) in g.iter().enumerate() {
        inv[gi] = i;
    }
    inv
}

/// (f then g read right-to-left): x -> f[g[x]].
fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

fn cycle_count(p: usize, next: impl Fn(usize) -> usize) -> usize {
    debug_assert!(p <= 32);
    let mut seen = 0u32;
    let mut cycles = 0;
    for s in 0..p {
        if seen & (1 << s) == 0 {
            cycles += 1;
            let mut x = s;
            while seen & (1 << x) == 0 {
                seen |= 1 << x;
                x = next(x);
            }
        }
    }
    cycles
}

/// Heap's algorithm; visits every arrangement of 0..p exactly once.
fn for_each_permutation(p: usize, mut visit: impl FnMut(&[usize])) {
    let mut a = identity_perm(p);
    visit(&a);
    let mut c = vec![0usize; p];
    let mut i = 0;
    while i < p {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn powers(base: usize, top: usize) -> Vec<BigInt> {
    let mut v = Vec::with_capacity(top + 1);
    v.push(BigInt::one());
    for _ in 0..top {
        v.push(v.last().expect("nonempty") * BigInt::from(base));
    }
    v
}

/// sum over h in S_p of sign(h) * m^cycles(g1 h) * n^cycles(g2 h).
fn signed_cycle_sum(m: usize, n: usize, g1: &[usize], g2: &[usize]) -> BigInt {
    let p = g1.len();
    debug_assert_eq!(p, g2.len());
    let m_pows = powers(m, p);
    let n_pows = powers(n, p);
    let mut sum = BigInt::zero();
    for_each_permutation(p, |h| {
        let ch = cycle_count(p, |x| h[x]);
        let c1 = cycle_count(p, |x| g1[h[x]]);
        let c2 = cycle_count(p, |x| g2[h[x]]);
        let term = &m_pows[c1] * &n_pows[c2];
        if (p - ch).is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
    });
    sum
}

fn normalized(m: usize, n: usize, p: usize, sum: BigInt) -> BigRational {
    let denom = BigInt::from(factorial(p)) * BigInt::from(binomial(m * n, p));
    BigRational::new(sum, denom)
}

fn validate_power(m: usize, n: usize, p: usize) -> Result<()> {
    if m == 0 || n == 0 || p > m * n {
        return Err(Error::Domain(format!(
            "need m, n >= 1 and 0 <= p <= m*n; got m={m}, n={n}, p={p}"
        )));
    }
    Ok(())
}

fn validate_cycle_type(sigma: &Partition, p: usize) -> Result<()> {
    if sigma.size() != p {
        return Err(Error::Domain(format!(
            "cycle type {sigma} has {} boxes, expected {p}",
            sigma.size()
        )));
    }
    Ok(())
}

/// Normalized trace of a cycle-type representative acting (with the identity
/// in the second slot) on the p-th exterior power of C^m tensor C^n:
/// (1 / (p! C(mn,p))) * sum over h of sign(h) m^cycles(sigma h) n^cycles(h).
pub fn ext_power_character(m: usize, n: usize, p: usize, sigma: &Partition) -> Result<BigRational> {
    validate_power(m, n, p)?;
    validate_cycle_type(sigma, p)?;
    if p > SIGNED_SUM_CAP {
        return Err(Error::Resource(format!(
            "signed sum iterates S_p directly; p = {p} exceeds the cap {SIGNED_SUM_CAP}"
        )));
    }
    let g = canonical_perm(sigma);
    let id = identity_perm(p);
    let value = normalized(m, n, p, signed_cycle_sum(m, n, &g, &id));
    if value.abs() > BigRational::one() {
        return Err(Error::Inconsistency(format!(
            "normalized character {value} exceeds 1 in absolute value"
        )));
    }
    Ok(value)
}

/// Irreducible symmetric-group character via the Murnaghan-Nakayama rim-hook
/// recursion, memoized on (shape, remaining cycles). At the identity cycle
/// type this equals f^lambda.
pub fn mn_character(lambda: &Partition, sigma: &Partition) -> Result<BigInt> {
    if lambda.size() != sigma.size() {
        return Err(Error::Domain(format!(
            "shape {lambda} and cycle type {sigma} have different sizes"
        )));
    }
    let mut memo = HashMap::new();
    Ok(mn_rec(
        lambda.parts().to_vec(),
        sigma.parts(),
        0,
        &mut memo,
    ))
}

fn mn_rec(
    parts: Vec<usize>,
    cycles: &[usize],
    idx: usize,
    memo: &mut HashMap<(Vec<usize>, usize), BigInt>,
) -> BigInt {
    if idx == cycles.len() {
        debug_assert!(parts.is_empty());
        return BigInt::one();
    }
    if let Some(hit) = memo.get(&(parts.clone(), idx)) {
        return hit.clone();
    }
    let t = cycles[idx];
    let len = parts.len();
    // First-column hook lengths: beta_i = part_i + len - 1 - i, strictly
    // decreasing. Removing a rim hook of length t moves one beta down by t,
    // provided the landing value is free; the sign is (-1)^(values jumped).
    let beta: Vec<usize> = parts
        .iter()
        .enumerate()
        .map(|(i, &part)| part + len - 1 - i)
        .collect();
    let mut total = BigInt::zero();
    for i in 0..len {
        if beta[i] < t {
            break;
        }
        let target = beta[i] - t;
        if beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&b| target < b && b < beta[i]).count();
        let mut new_beta = beta.clone();
        new_beta[i] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let new_parts: Vec<usize> = new_beta
            .iter()
            .enumerate()
            .map(|(k, &b)| b - (len - 1 - k))
            .filter(|&part| part > 0)
            .collect();
        let sub = mn_rec(new_parts, cycles, idx + 1, memo);
        if height % 2 == 0 {
            total += sub;
        } else {
            total -= sub;
        }
    }
    memo.insert((parts, idx), total.clone());
    total
}

/// Trace of a permutation of tensor positions on (C^d)^(tensor p): d to the
/// number of cycles, fixed points included.
pub fn permutation_tensor_trace(d: usize, pi: &Partition) -> BigUint {
    BigUint::from(d).pow(pi.len() as u32)
}

/// One cycle type with the two exactly computed sides of an identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterRow {
    pub cycle_type: Partition,
    pub lhs: BigRational,
    pub rhs: BigRational,
}

impl CharacterRow {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct RestrictionReport {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub rows: Vec<CharacterRow>,
}

impl RestrictionReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(CharacterRow::matches)
    }

    pub fn mismatches(&self) -> impl Iterator<Item = &CharacterRow> {
        self.rows.iter().filter(|r| !r.matches())
    }
}

fn pad_with_fixed_points(sigma: &Partition, k: usize) -> Partition {
    let mut parts = sigma.parts().to_vec();
    parts.extend(std::iter::repeat_n(1, k));
    Partition::new(parts).expect("appending fixed points keeps parts ordered")
}

/// For every cycle type sigma of p, compares the exterior-power character at
/// sigma with the normalized character of the m-row, n-column rectangle at
/// sigma with mn - p fixed points appended. The two sides agree exactly.
pub fn verify_restriction(m: usize, n: usize, p: usize) -> Result<RestrictionReport> {
    validate_power(m, n, p)?;
    if m * n > RECTANGLE_CHARACTER_CAP {
        return Err(Error::Resource(format!(
            "rectangular character table needs m*n <= {RECTANGLE_CHARACTER_CAP}; got {}",
            m * n
        )));
    }
    let rectangle = Rectangle::new(m, n)?.to_partition();
    let f_rect = BigInt::from(f_dim(&rectangle));
    let mut rows = Vec::new();
    for sigma in partitions_of(p) {
        let lhs = ext_power_character(m, n, p, &sigma)?;
        let extended = pad_with_fixed_points(&sigma, m * n - p);
        let rhs = BigRational::new(mn_character(&rectangle, &extended)?, f_rect.clone());
        rows.push(CharacterRow {
            cycle_type: sigma,
            lhs,
            rhs,
        });
    }
    Ok(RestrictionReport { m, n, p, rows })
}

/// Compares the character at (p, sigma) with the one at (p', sigma plus
/// p' - p fixed points); the value does not depend on the power.
pub fn verify_p_independence(
    m: usize,
    n: usize,
    p: usize,
    p_prime: usize,
    sigma: &Partition,
) -> Result<CharacterRow> {
    if p > p_prime {
        return Err(Error::Domain(format!("need p <= p'; got p={p}, p'={p_prime}")));
    }
    validate_cycle_type(sigma, p)?;
    let lhs = ext_power_character(m, n, p, sigma)?;
    let rhs = ext_power_character(m, n, p_prime, &pad_with_fixed_points(sigma, p_prime - p))?;
    Ok(CharacterRow {
        cycle_type: sigma.clone(),
        lhs,
        rhs,
    })
}

pub fn verify_p_independence_all(
    m: usize,
    n: usize,
    p: usize,
    p_prime: usize,
) -> Result<Vec<CharacterRow>> {
    partitions_of(p)
        .iter()
        .map(|sigma| verify_p_independence(m, n, p, p_prime, sigma))
        .collect()
}

#[derive(Debug, Clone)]
pub struct PartialTraceReport {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    /// (mn - p) / (p + 1), the multiple of the identity produced.
    pub scalar: BigRational,
    /// Side length of the partial-trace output, (mn)^p.
    pub side_dimension: usize,
    pub ok: bool,
}

/// Builds 1 - X_{p+1} (identity minus the Jucys-Murphy sum of transpositions
/// (i, p+1)) as a dense integer matrix on (C^mn)^(tensor p+1), takes the
/// partial trace over the last factor, and checks the result is exactly
/// (mn - p) times the identity; dividing by p+1 gives the reported scalar.
pub fn verify_jm_partial_trace(m: usize, n: usize, p: usize) -> Result<PartialTraceReport> {
    validate_power(m, n, p)?;
    let d = m * n;
    let mut dim: u128 = 1;
    for _ in 0..=p {
        dim *= d as u128;
        if dim > DENSE_OPERATOR_CAP as u128 {
            return Err(Error::Resource(format!(
                "dense operator needs (mn)^(p+1) <= {DENSE_OPERATOR_CAP}; got {d}^{}",
                p + 1
            )));
        }
    }
    let big = dim as usize;
    let small = big / d;
    // Basis index digits, most significant first; tensor position i has place
    // value d^(p - i), the traced-out position p has place value 1.
    let swap_with_last = |x: usize, i: usize| -> usize {
        let place = big / d.pow(i as u32 + 1);
        let di = (x / place) % d;
        let dl = x % d;
        x - di * place - dl + dl * place + di
    };
    let mut op = vec![0i64; big * big];
    for x in 0..big {
        op[x * big + x] += 1;
    }
    for i in 0..p {
        for x in 0..big {
            let y = swap_with_last(x, i);
            op[y * big + x] -= 1;
        }
    }
    let expected = d as i64 - p as i64;
    let mut ok = true;
    for r in 0..small {
        for c in 0..small {
            let mut entry = 0i64;
            for k in 0..d {
                entry += op[(r * d + k) * big + (c * d + k)];
            }
            let want = if r == c { expected } else { 0 };
            if entry != want {
                ok = false;
            }
        }
    }
    Ok(PartialTraceReport {
        m,
        n,
        p,
        scalar: BigRational::new(BigInt::from(expected), BigInt::from(p as i64 + 1)),
        side_dimension: small,
        ok,
    })
}

/// One cycle-type pair with both sides of the sign-twist identity.
#[derive(Debug, Clone, PartialEq)]
pub struct PairRow {
    pub first: Partition,
    pub second: Partition,
    /// chi(g1, g2), the two-argument signed sum at the canonical pair.
    pub lhs: BigRational,
    /// sign(g2) * chi(g1 g2^{-1}, id).
    pub rhs: BigRational,
}

impl PairRow {
    pub fn matches(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub rows: Vec<PairRow>,
}

impl PairReport {
    pub fn all_match(&self) -> bool {
        self.rows.iter().all(PairRow::matches)
    }
}

/// For every pair of cycle types, evaluates the two-argument character
/// chi(g1, g2) = (1/(p! C(mn,p))) sum_h sign(h) m^cycles(g1 h) n^cycles(g2 h)
/// at canonical representatives and checks
/// chi(g1, g2) = sign(g2) * chi(g1 g2^{-1}, id) exactly.
pub fn verify_pair_conjugation(m: usize, n: usize, p: usize) -> Result<PairReport> {
    validate_power(m, n, p)?;
    if p > PAIR_CONJUGATION_CAP {
        return Err(Error::Resource(format!(
            "pair table is quadratic in cycle types; p = {p} exceeds the cap {PAIR_CONJUGATION_CAP}"
        )));
    }
    let types = partitions_of(p);
    let id = identity_perm(p);
    let mut rows = Vec::new();
    for t1 in &types {
        let g1 = canonical_perm(t1);
        for t2 in &types {
            let g2 = canonical_perm(t2);
            let lhs = normalized(m, n, p, signed_cycle_sum(m, n, &g1, &g2));
            let quotient = compose(&g1, &inverse_perm(&g2));
            let base = normalized(m, n, p, signed_cycle_sum(m, n, &quotient, &id));
            let g2_even = (p - cycle_count(p, |x| g2[x])).is_multiple_of(2);
            let rhs = if g2_even { base } else { -base };
            rows.push(PairRow {
                first: t1.clone(),
                second: t2.clone(),
                lhs,
                rhs,
            });
        }
    }
    Ok(PairReport { m, n, p, rows })
}
