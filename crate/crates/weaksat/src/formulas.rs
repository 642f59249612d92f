//! Exact evaluators for the saturation counts.
//!
//! Every count is computed over arbitrary-precision integers; no floating
//! point enters any result. Counts that matter come in two independent
//! routes (a direct enumeration and a closed form) and the test suites hold
//! the two routes equal on exhaustive grids.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::hypergraph::MAX_CELLS;
use crate::util::{combinations, next_permutation, sorted_dominated};

/// An exact count plus the route that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub value: BigUint,
    pub method: CountMethod,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    Enumerated,
    ClosedForm,
}

impl std::fmt::Display for CountMethod {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CountMethod::Enumerated => write!(f, "enumerated"),
            CountMethod::ClosedForm => write!(f, "closed-form"),
        }
    }
}

fn enumerated(value: BigUint) -> CountResult {
    CountResult {
        value,
        method: CountMethod::Enumerated,
    }
}

fn closed(value: BigUint) -> CountResult {
    CountResult {
        value,
        method: CountMethod::ClosedForm,
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("class sizes must be nonempty")]
    EmptyP,
    #[error("class sizes must be sorted ascending, got {0:?}")]
    UnsortedP(Vec<usize>),
    #[error("value {value} outside range {range}")]
    OutOfRange { value: usize, range: String },
    #[error("lattice too large for enumeration: n^d = {cells} exceeds {max}")]
    TooLarge { cells: usize, max: usize },
    #[error("sequences a and b must have equal nonzero length")]
    LengthMismatch,
    #[error("closed form limited to d <= {max} (the sum ranges over subsets of d! permutations); use the enumeration route for d = {d}")]
    DimensionTooLarge { d: usize, max: usize },
}

fn validate_sorted_p(n: usize, p: &[usize]) -> Result<(), FormulaError> {
    if p.is_empty() {
        return Err(FormulaError::EmptyP);
    }
    if n == 0 {
        return Err(FormulaError::OutOfRange {
            value: 0,
            range: "n >= 1".into(),
        });
    }
    if p.windows(2).any(|w| w[0] > w[1]) {
        return Err(FormulaError::UnsortedP(p.to_vec()));
    }
    if let Some(&bad) = p.iter().find(|&&x| x == 0 || x > n) {
        return Err(FormulaError::OutOfRange {
            value: bad,
            range: format!("1..={n}"),
        });
    }
    Ok(())
}

/// Binomial coefficient as a big integer.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut res = BigUint::one();
    for i in 0..k {
        res = res * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    res
}

/// Multinomial coefficient `total! / (parts[0]! .. parts[m]! rest!)` where
/// `rest = total - sum(parts)`.
fn multinomial(total: u64, parts: &[u64]) -> BigUint {
    let mut remaining = total;
    let mut res = BigUint::one();
    for &part in parts {
        res *= binomial(remaining, part);
        remaining -= part;
    }
    res
}

/// Counts tuples `x` in `[n]^d` whose i-th smallest coordinate is at least
/// `p_i` for every `i`, by direct lattice scan. Requires `p` sorted and
/// `n^d` within the lattice cap.
pub fn qn_enumerate(n: usize, p: &[usize]) -> Result<CountResult, FormulaError> {
    validate_sorted_p(n, p)?;
    let d = p.len();
    let cells = n
        .checked_pow(d as u32)
        .filter(|&c| c <= MAX_CELLS)
        .ok_or(FormulaError::TooLarge {
            cells: usize::MAX,
            max: MAX_CELLS,
        })?;
    let mut count: u64 = 0;
    let mut coords = vec![1usize; d];
    let mut sorted = vec![0usize; d];
    for _ in 0..cells {
        sorted.copy_from_slice(&coords);
        sorted.sort_unstable();
        if sorted.iter().zip(p).all(|(x, t)| x >= t) {
            count += 1;
        }
        for i in (0..d).rev() {
            coords[i] += 1;
            if coords[i] <= n {
                break;
            }
            coords[i] = 1;
        }
    }
    Ok(enumerated(BigUint::from(count)))
}

/// Closed form for the same count: with distinct values `v_1 < .. < v_{m+1}`
/// of multiplicities `r_1..r_{m+1}`, sums
/// `multinomial(d; i_1..i_m) * prod (v_{j+1}-v_j)^{i_j} * (n-v_{m+1}+1)^{d-sum i}`
/// over index vectors whose partial sums respect `i_1+..+i_j <= r_1+..+r_j`.
/// Agrees with [`qn_enumerate`] everywhere both run; has no lattice cap.
pub fn qn_formula(n: usize, p: &[usize]) -> Result<CountResult, FormulaError> {
    validate_sorted_p(n, p)?;
    let mut total = BigUint::zero();
    qn_formula_terms(n, p, &mut |term| total += term);
    Ok(closed(total))
}

/// Drives the summation, feeding each summand to `sink`. Index vectors are
/// enumerated by an odometer whose prefix sums stay within the prefix sums
/// of the multiplicities (budgets are nondecreasing, so resetting a suffix
/// to zero never violates a later constraint).
fn qn_formula_terms(n: usize, p: &[usize], sink: &mut dyn FnMut(BigUint)) {
    let d = p.len();
    let mut values: Vec<usize> = Vec::new();
    let mut mults: Vec<u64> = Vec::new();
    for &x in p {
        if values.last() == Some(&x) {
            *mults.last_mut().unwrap() += 1;
        } else {
            values.push(x);
            mults.push(1);
        }
    }
    let m = values.len() - 1;
    let top = *values.last().unwrap();
    let budgets: Vec<u64> = mults[..m]
        .iter()
        .scan(0u64, |acc, &r| {
            *acc += r;
            Some(*acc)
        })
        .collect();
    let mut idx = vec![0u64; m];
    loop {
        let used: u64 = idx.iter().sum();
        let mut term = multinomial(d as u64, &idx);
        for (k, &i) in idx.iter().enumerate() {
            term *= BigUint::from(values[k + 1] - values[k]).pow(i as u32);
        }
        term *= BigUint::from(n - top + 1).pow((d as u64 - used) as u32);
        sink(term);

        let mut j = m;
        loop {
            if j == 0 {
                return;
            }
            j -= 1;
            let prefix: u64 = idx[..=j].iter().sum();
            if prefix < budgets[j] {
                idx[j] += 1;
                for slot in idx[j + 1..].iter_mut() {
                    *slot = 0;
                }
                break;
            }
        }
    }
}

#[cfg(test)]
pub(crate) fn qn_formula_summand_count(p: &[usize]) -> u64 {
    let mut count = 0u64;
    // n is irrelevant to the index space; any n >= p_d works
    let n = *p.last().unwrap();
    qn_formula_terms(n, p, &mut |_| count += 1);
    count
}

/// The weak saturation number `W = n^d - q_n(p)` (closed form).
pub fn weak_sat_number(n: usize, p: &[usize]) -> Result<CountResult, FormulaError> {
    let q = qn_formula(n, p)?;
    let total = BigUint::from(n).pow(p.len() as u32);
    Ok(closed(total - q.value))
}

/// The directed analogue `n^d - prod (n - p_i + 1)`; `p` may be in any order.
pub fn directed_weak_sat_number(n: usize, p: &[usize]) -> Result<CountResult, FormulaError> {
    if p.is_empty() {
        return Err(FormulaError::EmptyP);
    }
    if let Some(&bad) = p.iter().find(|&&x| x == 0 || x > n) {
        return Err(FormulaError::OutOfRange {
            value: bad,
            range: format!("1..={n}"),
        });
    }
    let total = BigUint::from(n).pow(p.len() as u32);
    let mut prod = BigUint::one();
    for &pi in p {
        prod *= BigUint::from(n - pi + 1);
    }
    Ok(closed(total - prod))
}

/// Size of the level set `L_i(t)`: tuples in `[n]^d` with exactly `i`
/// coordinates below `t`, i.e. `C(d,i) (t-1)^i (n-t+1)^{d-i}`.
pub fn l_set_size(n: usize, d: usize, i: usize, t: usize) -> Result<CountResult, FormulaError> {
    if d == 0 || n == 0 {
        return Err(FormulaError::OutOfRange {
            value: 0,
            range: "d, n >= 1".into(),
        });
    }
    if i > d {
        return Err(FormulaError::OutOfRange {
            value: i,
            range: format!("0..={d}"),
        });
    }
    if t == 0 || t > n {
        return Err(FormulaError::OutOfRange {
            value: t,
            range: format!("1..={n}"),
        });
    }
    let mut term = binomial(d as u64, i as u64);
    term *= BigUint::from(t - 1).pow(i as u32);
    term *= BigUint::from(n - t + 1).pow((d - i) as u32);
    Ok(closed(term))
}

/// Evaluates `W` through the inclusion-exclusion over the level sets
/// `L_i(p_i)`: the union of the `L_i` is exactly the set of tuples the weak
/// saturation number counts, and the intersection over an index set
/// `I = {i_1 < .. < i_t}` factors into a multinomial times powers of the
/// consecutive gaps of `p`. Must equal [`weak_sat_number`].
pub fn w_inclusion_exclusion(n: usize, p: &[usize]) -> Result<CountResult, FormulaError> {
    validate_sorted_p(n, p)?;
    let d = p.len();
    if d > 20 {
        return Err(FormulaError::DimensionTooLarge { d, max: 20 });
    }
    let mut acc = BigInt::zero();
    for subset in 1u32..(1 << d) {
        let indices: Vec<usize> = (0..d).filter(|&i| subset >> i & 1 == 1).collect();
        let term = level_intersection_size(n, p, &indices);
        if subset.count_ones() % 2 == 1 {
            acc += BigInt::from(term);
        } else {
            acc -= BigInt::from(term);
        }
    }
    debug_assert!(!acc.is_negative());
    Ok(closed(acc.to_biguint().expect("inclusion-exclusion is nonnegative")))
}

/// `|L_{i_1}(p_{i_1}) ∩ .. ∩ L_{i_t}(p_{i_t})|` for 0-based `indices`
/// (ascending): a tuple lies in the intersection iff exactly `i_j` of its
/// coordinates are below `p_{i_j}` for each `j`, which buckets the
/// coordinates by the consecutive thresholds.
fn level_intersection_size(n: usize, p: &[usize], indices: &[usize]) -> BigUint {
    let d = p.len();
    // 1-based level indices
    let levels: Vec<usize> = indices.iter().map(|&i| i + 1).collect();
    let mut parts: Vec<u64> = Vec::with_capacity(levels.len());
    let mut factors: Vec<(usize, u32)> = Vec::with_capacity(levels.len() + 1);
    let mut prev_level = 0usize;
    let mut prev_threshold = 1usize; // treat the "0-th" threshold as 1
    for (&lvl, &i0) in levels.iter().zip(indices) {
        let threshold = p[i0];
        let width = lvl - prev_level;
        parts.push(width as u64);
        if threshold < prev_threshold {
            return BigUint::zero();
        }
        factors.push((threshold - prev_threshold, width as u32));
        prev_level = lvl;
        prev_threshold = threshold;
    }
    let rest = (d - prev_level) as u32;
    factors.push((n - prev_threshold + 1, rest));
    let mut term = multinomial(d as u64, &parts);
    for (base, exp) in factors {
        if exp > 0 {
            term *= BigUint::from(base).pow(exp);
        }
    }
    term
}

/// The crude sandwich `|L_1(p_1)| <= W <= sum_i |L_i(p_i)|`.
pub fn w_crude_bounds(n: usize, p: &[usize]) -> Result<(CountResult, CountResult), FormulaError> {
    validate_sorted_p(n, p)?;
    let d = p.len();
    let lower = l_set_size(n, d, 1, p[0])?;
    let mut upper = BigUint::zero();
    for (i, &t) in p.iter().enumerate() {
        upper += l_set_size(n, d, i + 1, t)?.value;
    }
    Ok((lower, closed(upper)))
}

fn validate_q_args(a: &[usize], b: &[usize]) -> Result<(), FormulaError> {
    if a.is_empty() || a.len() != b.len() {
        return Err(FormulaError::LengthMismatch);
    }
    Ok(())
}

/// Counts sets `S` over disjoint parts `U_i = [max(a) + b_i]` with
/// `|S ∩ U_i| = b_i` such that some permutation `pi` puts
/// `S ∩ U_i` inside `[a_{pi(i)} + b_i]`, by direct enumeration.
///
/// The permutation test reduces to sorted threshold matching: with
/// `m_i = max(S ∩ U_i) - b_i` (zero when `b_i = 0`), a valid `pi` exists
/// iff the ascending sort of `m` is dominated by the ascending sort of `a`.
pub fn q_enumerate(a: &[usize], b: &[usize]) -> Result<CountResult, FormulaError> {
    validate_q_args(a, b)?;
    let d = a.len();
    let a_star = *a.iter().max().unwrap();
    // per-part candidate subsets, as max-label summaries
    let part_choices: Vec<Vec<usize>> = b
        .iter()
        .map(|&bi| {
            let pool: Vec<usize> = (1..=a_star + bi).collect();
            combinations(&pool, bi)
                .map(|set| if bi == 0 { 0 } else { set[bi - 1] - bi })
                .collect()
        })
        .collect();
    let mut count: u128 = 0;
    let mut idx = vec![0usize; d];
    let mut m = vec![0usize; d];
    loop {
        for i in 0..d {
            m[i] = part_choices[i][idx[i]];
        }
        if sorted_dominated(&m, a) {
            count += 1;
        }
        let mut i = d;
        loop {
            if i == 0 {
                return Ok(enumerated(BigUint::from(count)));
            }
            i -= 1;
            idx[i] += 1;
            if idx[i] < part_choices[i].len() {
                break;
            }
            idx[i] = 0;
        }
    }
}

/// Closed form for the same count: inclusion-exclusion over the nonempty
/// subsets of the distinct assignments `(a_{pi(1)}, .., a_{pi(d)})`, with
/// each intersection contributing `prod C(min_i + b_i, b_i)` over the
/// pointwise minimum of the subset. Capped at `d <= 4`; use
/// [`q_enumerate`] beyond that.
pub fn q_formula(a: &[usize], b: &[usize]) -> Result<CountResult, FormulaError> {
    validate_q_args(a, b)?;
    let d = a.len();
    if d > 4 {
        return Err(FormulaError::DimensionTooLarge { d, max: 4 });
    }
    // distinct assignment vectors, lexicographically
    let mut assignment = a.to_vec();
    assignment.sort_unstable();
    let mut vectors: Vec<Vec<usize>> = vec![assignment.clone()];
    while next_permutation(&mut assignment) {
        vectors.push(assignment.clone());
    }
    // accumulate signed multiplicities per pointwise-minimum vector
    let mut weights: HashMap<Vec<usize>, i64> = HashMap::new();
    fn rec(
        vectors: &[Vec<usize>],
        k: usize,
        current: &mut Vec<usize>,
        size: usize,
        weights: &mut HashMap<Vec<usize>, i64>,
    ) {
        if k == vectors.len() {
            if size > 0 {
                let sign = if size % 2 == 1 { 1 } else { -1 };
                *weights.entry(current.clone()).or_insert(0) += sign;
            }
            return;
        }
        // exclude vectors[k]
        rec(vectors, k + 1, current, size, weights);
        // include vectors[k]
        let saved = current.clone();
        for (c, &v) in current.iter_mut().zip(&vectors[k]) {
            *c = (*c).min(v);
        }
        rec(vectors, k + 1, current, size + 1, weights);
        *current = saved;
    }
    let mut start = vec![usize::MAX; d];
    rec(&vectors, 0, &mut start, 0, &mut weights);

    let mut acc = BigInt::zero();
    let mut keys: Vec<&Vec<usize>> = weights.keys().collect();
    keys.sort();
    for key in keys {
        let w = weights[key];
        if w == 0 {
            continue;
        }
        let mut prod = BigUint::one();
        for (&ai, &bi) in key.iter().zip(b) {
            prod *= binomial((ai + bi) as u64, bi as u64);
        }
        acc += BigInt::from(w) * BigInt::from(prod);
    }
    debug_assert!(!acc.is_negative());
    Ok(closed(acc.to_biguint().expect("inclusion-exclusion is nonnegative")))
}

/// Checks the reduction identity `Q(n - p_1, .., n - p_d, 1, .., 1) =
/// q_n(p_1, .., p_d)` by evaluating both sides through their enumeration
/// routes.
pub fn identity_check(n: usize, p: &[usize]) -> Result<bool, FormulaError> {
    validate_sorted_p(n, p)?;
    let a: Vec<usize> = p.iter().map(|&x| n - x).collect();
    let b = vec![1usize; p.len()];
    let lhs = q_enumerate(&a, &b)?;
    let rhs = qn_enumerate(n, p)?;
    Ok(lhs.value == rhs.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qn(n: usize, p: &[usize]) -> u64 {
        let e: u64 = qn_enumerate(n, p).unwrap().value.try_into().unwrap();
        let f: u64 = qn_formula(n, p).unwrap().value.try_into().unwrap();
        assert_eq!(e, f, "routes disagree at n={n} p={p:?}");
        e
    }

    #[test]
    fn qn_small_values() {
        assert_eq!(qn(3, &[1, 2]), 8);
        assert_eq!(qn(2, &[1, 1, 2]), 7);
        assert_eq!(qn(5, &[2, 2, 2]), 4usize.pow(3) as u64);
        assert_eq!(qn(3, &[3, 3]), 1);
    }

    #[test]
    fn qn_rejects_unsorted() {
        assert!(matches!(qn_enumerate(3, &[2, 1]), Err(FormulaError::UnsortedP(_))));
        assert!(matches!(qn_formula(3, &[2, 1]), Err(FormulaError::UnsortedP(_))));
        assert!(matches!(qn_enumerate(3, &[2, 4]), Err(FormulaError::OutOfRange { .. })));
    }

    #[test]
    fn qn_enumeration_capped_but_formula_unbounded() {
        // 32^5 cells sit just past the enumeration cap
        assert!(matches!(
            qn_enumerate(32, &[2, 2, 2, 2, 2]),
            Err(FormulaError::TooLarge { .. })
        ));
        let q = qn_formula(32, &[2, 2, 2, 2, 2]).unwrap().value;
        assert_eq!(q, BigUint::from(31u32).pow(5));
    }

    #[test]
    fn qn_two_value_formula() {
        // v1 occurring r times: sum_i C(d,i) (v2-v1)^i (n-v2+1)^{d-i}
        let direct: u64 = (0..=1u64)
            .map(|i| {
                u64::try_from(binomial(2, i)).unwrap() * 1u64.pow(i as u32) * 2u64.pow(2 - i as u32)
            })
            .sum();
        assert_eq!(qn(3, &[1, 2]), direct);
    }

    #[test]
    fn qn_formula_summands_are_catalan_for_distinct_p() {
        let catalan = [1u64, 1, 2, 5, 14, 42, 132];
        for (d, &want) in catalan.iter().enumerate().skip(1) {
            let p: Vec<usize> = (1..=d).collect();
            assert_eq!(qn_formula_summand_count(&p), want, "d={d}");
        }
    }

    #[test]
    fn weak_sat_values() {
        let w = |n, p: &[usize]| -> u64 { weak_sat_number(n, p).unwrap().value.try_into().unwrap() };
        assert_eq!(w(3, &[2, 2]), 5);
        assert_eq!(w(4, &[2, 3]), 8);
        assert_eq!(w(5, &[1, 1, 1]), 0);
    }

    #[test]
    fn directed_weak_sat_values() {
        let wd = |n, p: &[usize]| -> u64 {
            directed_weak_sat_number(n, p).unwrap().value.try_into().unwrap()
        };
        assert_eq!(wd(2, &[1, 1, 2]), 4);
        assert_eq!(wd(7, &[1, 1]), 0);
        assert_eq!(wd(4, &[2, 3]), 10);
        assert_eq!(wd(4, &[3, 2]), 10); // order irrelevant
        assert!(matches!(
            directed_weak_sat_number(2, &[3, 1]),
            Err(FormulaError::OutOfRange { .. })
        ));
    }

    #[test]
    fn l_set_sizes() {
        let l = |n, d, i, t| -> u64 { l_set_size(n, d, i, t).unwrap().value.try_into().unwrap() };
        assert_eq!(l(3, 2, 1, 2), 4);
        assert_eq!(l(3, 2, 0, 2), 4); // (n-t+1)^d
        assert_eq!(l(3, 2, 2, 1), 0);
        assert!(l_set_size(3, 2, 3, 2).is_err());
        assert!(l_set_size(3, 2, 1, 4).is_err());
    }

    #[test]
    fn inclusion_exclusion_matches_weak_sat() {
        for n in 1..=5 {
            for p1 in 1..=n {
                for p2 in p1..=n {
                    for p3 in p2..=n {
                        let p = [p1, p2, p3];
                        assert_eq!(
                            w_inclusion_exclusion(n, &p).unwrap().value,
                            weak_sat_number(n, &p).unwrap().value,
                            "n={n} p={p:?}"
                        );
                    }
                }
            }
        }
        assert_eq!(
            w_inclusion_exclusion(9, &[1, 1, 1, 1]).unwrap().value,
            BigUint::zero()
        );
    }

    #[test]
    fn crude_bounds_sandwich() {
        let (lo, hi) = w_crude_bounds(4, &[2, 3]).unwrap();
        let w = weak_sat_number(4, &[2, 3]).unwrap();
        assert_eq!(lo.value, BigUint::from(6u32));
        assert_eq!(hi.value, BigUint::from(10u32));
        assert!(lo.value <= w.value && w.value <= hi.value);

        let (lo, hi) = w_crude_bounds(5, &[1, 1]).unwrap();
        assert_eq!((lo.value, hi.value), (BigUint::zero(), BigUint::zero()));

        let (lo, hi) = w_crude_bounds(100, &[2, 2]).unwrap();
        let w = weak_sat_number(100, &[2, 2]).unwrap();
        assert_eq!(lo.value, BigUint::from(198u32));
        assert!(lo.value <= w.value && w.value <= hi.value);
    }

    fn q_both(a: &[usize], b: &[usize]) -> u64 {
        let e: u64 = q_enumerate(a, b).unwrap().value.try_into().unwrap();
        let f: u64 = q_formula(a, b).unwrap().value.try_into().unwrap();
        assert_eq!(e, f, "routes disagree at a={a:?} b={b:?}");
        e
    }

    #[test]
    fn q_small_values() {
        assert_eq!(q_both(&[1, 2], &[1, 1]), 8);
        assert_eq!(q_both(&[2], &[1]), 3);
        assert_eq!(q_both(&[1, 2], &[1, 2]), 15);
        assert_eq!(q_both(&[0, 0], &[2, 1]), 1);
        // equal caps: product of binomials
        assert_eq!(q_both(&[2, 2], &[1, 3]), 3 * 10);
    }

    #[test]
    fn q_formula_d2_display() {
        // for a1 <= a2: C(a1+b1,b1)C(a2+b2,b2) + C(a2+b1,b1)C(a1+b2,b2)
        //              - C(a1+b1,b1)C(a1+b2,b2)
        for a1 in 0..=3usize {
            for a2 in a1..=3 {
                for b1 in 0..=3usize {
                    for b2 in 0..=3 {
                        let c = |x: usize, y: usize| binomial((x + y) as u64, y as u64);
                        let want = c(a1, b1) * c(a2, b2) + c(a2, b1) * c(a1, b2)
                            - c(a1, b1) * c(a1, b2);
                        assert_eq!(q_formula(&[a1, a2], &[b1, b2]).unwrap().value, want);
                    }
                }
            }
        }
    }

    #[test]
    fn q_routes_agree_at_d4() {
        // repeated caps collapse to few assignment vectors; all-distinct caps
        // exercise the full 2^24-subset expansion
        assert_eq!(q_both(&[0, 1, 2, 2], &[1, 1, 1, 1]), {
            let e: u64 = q_enumerate(&[0, 1, 2, 2], &[1, 1, 1, 1]).unwrap().value.try_into().unwrap();
            e
        });
        q_both(&[0, 1, 2, 3], &[1, 1, 1, 1]);
        q_both(&[1, 1, 2, 3], &[2, 0, 1, 1]);
    }

    #[test]
    fn q_sandwiched_between_identity_and_relaxed_products() {
        // the identity assignment alone gives prod C(a_i+b_i, b_i) sets;
        // every candidate set gives prod C(a*+b_i, b_i)
        for a in [[0usize, 2, 1], [1, 1, 3], [2, 0, 0]] {
            for b in [[1usize, 2, 0], [2, 2, 2]] {
                let q = q_enumerate(&a, &b).unwrap().value;
                let a_star = *a.iter().max().unwrap();
                let mut lower = BigUint::one();
                let mut upper = BigUint::one();
                for (&ai, &bi) in a.iter().zip(&b) {
                    lower *= binomial((ai + bi) as u64, bi as u64);
                    upper *= binomial((a_star + bi) as u64, bi as u64);
                }
                assert!(lower <= q && q <= upper, "a={a:?} b={b:?}");
            }
        }
    }

    #[test]
    fn q_formula_rejects_large_d() {
        assert!(matches!(
            q_formula(&[1; 5], &[1; 5]),
            Err(FormulaError::DimensionTooLarge { d: 5, max: 4 })
        ));
        assert!(q_enumerate(&[1; 5], &[1; 5]).is_ok());
    }

    #[test]
    fn identity_small_cases() {
        assert!(identity_check(2, &[1, 2]).unwrap());
        assert!(identity_check(3, &[1, 2]).unwrap());
        assert!(identity_check(4, &[4, 4]).unwrap());
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(0, 0), BigUint::one());
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(multinomial(4, &[2, 1]), BigUint::from(12u32));
    }
}
