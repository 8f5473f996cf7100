//! Multiplication kernels.
//!
//! [`sparse_product`] works for every ring by expanding term pairs into a hash
//! map. [`dense_skew_product`] handles skew rings by laying both operands out in
//! a dense exponent box, with each coefficient split into its `k` digits over
//! `F_p`. Multiplying by a left term `c d^e` then becomes a fixed `k x k` matrix
//! over `F_p` (the map `v -> c * frob^t(v)`) applied to contiguous runs of the
//! right operand, which the compiler vectorises well.

use std::collections::{BTreeMap, HashMap};

use crate::field::FieldTables;
use crate::monomial::{Exponents, Monomial};

use super::poly::OrePolynomial;
use super::ring::{Coefficients, RingKind};

/// Upper bound on the number of cells of a dense product box.
pub const DENSE_CELL_LIMIT: u64 = 1 << 22;

/// Dispatches to the fastest applicable kernel. Both operands must share a ring.
pub(crate) fn product(a: &OrePolynomial, b: &OrePolynomial) -> OrePolynomial {
    if a.is_zero() || b.is_zero() {
        return OrePolynomial::zero(&a.ring);
    }
    if a.ring.kind() == RingKind::Skew {
        let cells = product_box_cells(a, b);
        let pairs = a.len() as u64 * b.len() as u64;
        if cells <= DENSE_CELL_LIMIT && pairs.saturating_mul(4) >= cells {
            if let Some(p) = dense_skew_product(a, b) {
                return p;
            }
        }
    }
    sparse_product(a, b)
}

fn product_box_cells(a: &OrePolynomial, b: &OrePolynomial) -> u64 {
    a.max_exponents()
        .iter()
        .zip(b.max_exponents())
        .map(|(x, y)| (x + y + 1) as u64)
        .try_fold(1u64, |acc, d| acc.checked_mul(d))
        .unwrap_or(u64::MAX)
}

fn sorted_descending(ring: &OrePolynomial, map: HashMap<Monomial, u32>) -> OrePolynomial {
    let mut terms: Vec<(Monomial, u32)> = map.into_iter().filter(|(_, c)| *c != 0).collect();
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    OrePolynomial::from_sorted(&ring.ring, terms)
}

/// Term-by-term product valid in every supported ring.
pub fn sparse_product(a: &OrePolynomial, b: &OrePolynomial) -> OrePolynomial {
    assert!(a.ring == b.ring, "operands from the same ring");
    let ring = &a.ring;
    let k = &ring.coeffs;
    let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity((a.len() * b.len()).min(1 << 16));
    let mut add = |m: Monomial, c: u32| {
        if c != 0 {
            let slot = acc.entry(m).or_insert(0);
            *slot = k.add(*slot, c);
        }
    };
    match ring.kind() {
        RingKind::Skew => {
            for (ea, ca) in &a.terms {
                let t = ring.twist_class(ea.exponents());
                for (eb, cb) in &b.terms {
                    add(ea.mul(eb), k.mul(*ca, k.frobenius(t, *cb)));
                }
            }
        }
        RingKind::Weyl => {
            let p = ring.characteristic();
            let n = ring.n_ore_vars();
            for (ea, ca) in &a.terms {
                let (alpha, beta) = ea.exponents().split_at(n);
                for (eb, cb) in &b.terms {
                    let (gamma, delta) = eb.exponents().split_at(n);
                    let base = k.mul(*ca, *cb);
                    weyl_term_product(p, alpha, beta, gamma, delta, |m, c| {
                        add(m, k.mul(base, c))
                    });
                }
            }
        }
    }
    sorted_descending(a, acc)
}

/// Expands `x^alpha d^beta * x^gamma d^delta` in normal form, reporting each
/// monomial with its coefficient mod `p` via
/// `d^b x^g = sum_k C(b,k) C(g,k) k! x^(g-k) d^(b-k)` in every variable.
pub(crate) fn weyl_term_product(
    p: u32,
    alpha: &[u32],
    beta: &[u32],
    gamma: &[u32],
    delta: &[u32],
    mut emit: impl FnMut(Monomial, u32),
) {
    let n = alpha.len();
    // factors[i] lists (k, C(beta_i,k) C(gamma_i,k) k! mod p) with nonzero factor.
    let factors: Vec<Vec<(u32, u32)>> = (0..n)
        .map(|i| {
            (0..=beta[i].min(gamma[i]))
                .map(|kk| (kk, commutation_factor(beta[i], gamma[i], kk, p)))
                .filter(|(_, f)| *f != 0)
                .collect()
        })
        .collect();
    if factors.iter().any(Vec::is_empty) {
        return;
    }
    let mut idx = vec![0usize; n];
    loop {
        let mut exps: Exponents = Exponents::with_capacity(2 * n);
        let mut coeff = 1u64;
        for i in 0..n {
            let (kk, _) = factors[i][idx[i]];
            exps.push(alpha[i] + gamma[i] - kk);
        }
        for i in 0..n {
            let (kk, f) = factors[i][idx[i]];
            exps.push(beta[i] + delta[i] - kk);
            coeff = coeff * f as u64 % p as u64;
        }
        emit(Monomial(exps), coeff as u32);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            idx[i] += 1;
            if idx[i] < factors[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
}

/// `C(b,k) * C(g,k) * k!  =  b(b-1)...(b-k+1) * C(g,k)`  (mod p).
fn commutation_factor(b: u32, g: u32, k: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut falling = 1u64;
    for j in 0..k {
        falling = falling * ((b - j) as u64 % p64) % p64;
        if falling == 0 {
            return 0;
        }
    }
    (falling * binomial_mod(g, k, p) as u64 % p64) as u32
}

/// `C(n, k) mod p` by Lucas' theorem.
pub(crate) fn binomial_mod(mut n: u32, mut k: u32, p: u32) -> u32 {
    let p64 = p as u64;
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return 0;
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for j in 0..kd {
            num = num * ((nd - j) as u64) % p64;
            den = den * ((j + 1) as u64) % p64;
        }
        let inv = crate::field::inv_mod(den as u32, p).expect("k! is a unit for k < p");
        acc = acc * num % p64 * inv as u64 % p64;
        n /= p;
        k /= p;
    }
    acc as u32
}

/// One run of the right operand along the last variable.
/// Accumulator lane. Narrow lanes double the SIMD width when the field is
/// small enough for them to hold a useful number of products between
/// reductions.
trait Lane: Copy + Default {
    const MAX: u64;
    fn from_u32(v: u32) -> Self;
    fn to_u32(self) -> u32;
    fn mul_add(self, m: Self, y: Self) -> Self;
}

impl Lane for u16 {
    const MAX: u64 = u16::MAX as u64;
    fn from_u32(v: u32) -> Self {
        v as u16
    }
    fn to_u32(self) -> u32 {
        self as u32
    }
    #[inline(always)]
    fn mul_add(self, m: Self, y: Self) -> Self {
        self.wrapping_add(m.wrapping_mul(y))
    }
}

impl Lane for u32 {
    const MAX: u64 = u32::MAX as u64;
    fn from_u32(v: u32) -> Self {
        v
    }
    fn to_u32(self) -> u32 {
        self
    }
    #[inline(always)]
    fn mul_add(self, m: Self, y: Self) -> Self {
        self.wrapping_add(m.wrapping_mul(y))
    }
}

/// Smallest number of left terms a `u16` accumulator must absorb between
/// reductions to be worth using.
const NARROW_MIN_BUDGET: u64 = 64;

struct Row<L> {
    /// Linear offset of the run's first cell inside the product box.
    offset: usize,
    /// Twist class of the run's first monomial.
    class: u32,
    len: usize,
    /// Digit lanes, lane-major: digit `s` of cell `j` at `s * len + j`.
    lanes: Vec<L>,
}

/// Splits `poly` into runs along the last variable, laid out in a box with
/// the given strides.
fn build_rows<L: Lane>(poly: &OrePolynomial, strides: &[usize], tables: &FieldTables) -> Vec<Row<L>> {
    let n = strides.len();
    let k = tables.degree();
    let mut grouped: BTreeMap<&[u32], Vec<(u32, u32)>> = BTreeMap::new();
    for (m, c) in &poly.terms {
        let (prefix, last) = m.exponents().split_at(n - 1);
        grouped.entry(prefix).or_default().push((last[0], *c));
    }
    grouped
        .into_iter()
        .map(|(prefix, entries)| {
            let lo = entries.iter().map(|e| e.0).min().unwrap();
            let hi = entries.iter().map(|e| e.0).max().unwrap();
            let len = (hi - lo + 1) as usize;
            let mut lanes = vec![L::default(); k * len];
            for (e, c) in entries {
                for (s, &d) in tables.digits(c).iter().enumerate() {
                    lanes[s * len + (e - lo) as usize] = L::from_u32(d);
                }
            }
            let offset = prefix
                .iter()
                .zip(strides)
                .map(|(&x, &s)| x as usize * s)
                .sum::<usize>()
                + lo as usize;
            let mut start: Vec<u32> = prefix.to_vec();
            start.push(lo);
            let class = poly.ring.twist_class(&start);
            Row {
                offset,
                class,
                len,
                lanes,
            }
        })
        .collect()
}

/// Fixed cost, in lane operations, charged for visiting one run.
const RUN_OVERHEAD: u64 = 56;

/// Dense product in a skew ring; `None` when the ring is not skew or the
/// product box exceeds [`DENSE_CELL_LIMIT`].
pub fn dense_skew_product(a: &OrePolynomial, b: &OrePolynomial) -> Option<OrePolynomial> {
    assert!(a.ring == b.ring, "operands from the same ring");
    let ring = &a.ring;
    let tables: &FieldTables = match &ring.coeffs {
        Coefficients::Tables(t) if ring.kind() == RingKind::Skew => t,
        _ => return None,
    };
    if a.is_zero() || b.is_zero() {
        return Some(OrePolynomial::zero(ring));
    }
    let cells = product_box_cells(a, b);
    if cells > DENSE_CELL_LIMIT {
        return None;
    }
    let p = ring.characteristic() as u64;
    let per_term = tables.degree() as u64 * (p - 1) * (p - 1);
    if (u16::MAX as u64 - p) / per_term.max(1) >= NARROW_MIN_BUDGET {
        Some(dense_kernel::<u16>(a, b, tables, cells as usize))
    } else {
        Some(dense_kernel::<u32>(a, b, tables, cells as usize))
    }
}

/// Either walks the terms of `a` over runs of `b`, multiplying each run by a
/// fixed matrix, or walks the terms of `b` over runs of `a`. In the second
/// form the matrix changes along a run with the twist class of the left
/// monomial, which is periodic, so it is read from precomputed weight rows.
fn dense_kernel<L: Lane>(
    a: &OrePolynomial,
    b: &OrePolynomial,
    tables: &FieldTables,
    cells: usize,
) -> OrePolynomial {
    let ring = &a.ring;
    let n = ring.n_ore_vars();
    let k = tables.degree();
    let p = ring.characteristic();
    let (ma, mb) = (a.max_exponents(), b.max_exponents());
    let dims: Vec<usize> = ma.iter().zip(&mb).map(|(x, y)| (x + y + 1) as usize).collect();
    let mut strides = vec![1usize; n];
    for i in (0..n - 1).rev() {
        strides[i] = strides[i + 1] * dims[i + 1];
    }
    let lin = |e: &[u32]| -> usize { e.iter().zip(&strides).map(|(&x, &s)| x as usize * s).sum() };

    let rows_a: Vec<Row<L>> = build_rows(a, &strides, tables);
    let rows_b: Vec<Row<L>> = build_rows(b, &strides, tables);
    let kk = (k * k) as u64;
    let lane_total = |rows: &[Row<L>]| rows.iter().map(|r| r.len as u64).sum::<u64>();
    let max_len_a = rows_a.iter().map(|r| r.len).max().unwrap_or(0);
    let cost_a_outer =
        a.len() as u64 * kk * (rows_b.len() as u64 * RUN_OVERHEAD + lane_total(&rows_b));
    let cost_b_outer = b.len() as u64
        * kk
        * (rows_a.len() as u64 * RUN_OVERHEAD + lane_total(&rows_a) * 3 / 2 + k as u64 * max_len_a as u64);

    let per_term = k as u64 * (p as u64 - 1) * (p as u64 - 1);
    let budget = ((L::MAX - p as u64) / per_term.max(1)).max(1);
    let reduce = |out: &mut [L]| {
        out.iter_mut()
            .for_each(|x| *x = L::from_u32(x.to_u32() % p));
    };
    let mut pending = 0u64;
    let mut out = vec![L::default(); k * cells];
    if cost_a_outer <= cost_b_outer {
        let mut matrix = vec![L::default(); k * k];
        for (ea, ca) in &a.terms {
            let t = ring.twist_class(ea.exponents());
            for (dst, &m) in matrix.iter_mut().zip(tables.scaled_frobenius(t, *ca)) {
                *dst = L::from_u32(m);
            }
            let base = lin(ea.exponents());
            for row in &rows_b {
                let dst = base + row.offset;
                for r in 0..k {
                    let o = &mut out[r * cells + dst..r * cells + dst + row.len];
                    for s in 0..k {
                        let m = matrix[r * k + s];
                        if m.to_u32() == 0 {
                            continue;
                        }
                        let src = &row.lanes[s * row.len..(s + 1) * row.len];
                        for (x, &y) in o.iter_mut().zip(src) {
                            *x = x.mul_add(m, y);
                        }
                    }
                }
            }
            pending += 1;
            if pending >= budget {
                reduce(&mut out);
                pending = 0;
            }
        }
    } else {
        let step = ring.twist_class(Monomial::unit(n, n - 1, 1).exponents());
        // weights[((phase * k + r) * k + s) * max_len_a + j]
        let mut weights = vec![L::default(); k * k * k * max_len_a];
        for (eb, cb) in &b.terms {
            let matrices: Vec<&[u32]> = (0..k as u32)
                .map(|cls| tables.scaled_frobenius(0, tables.frobenius(cls, *cb)))
                .collect();
            for phase in 0..k {
                for j in 0..max_len_a {
                    let cls = (phase + step as usize * j) % k;
                    for (rs, &m) in matrices[cls].iter().enumerate() {
                        weights[(phase * k * k + rs) * max_len_a + j] = L::from_u32(m);
                    }
                }
            }
            let base = lin(eb.exponents());
            for row in &rows_a {
                let dst = base + row.offset;
                let phase = row.class as usize;
                for r in 0..k {
                    let o = &mut out[r * cells + dst..r * cells + dst + row.len];
                    for s in 0..k {
                        let w0 = (phase * k * k + r * k + s) * max_len_a;
                        let w = &weights[w0..w0 + row.len];
                        let src = &row.lanes[s * row.len..(s + 1) * row.len];
                        for ((x, &y), &m) in o.iter_mut().zip(src).zip(w) {
                            *x = x.mul_add(m, y);
                        }
                    }
                }
            }
            pending += 1;
            if pending >= budget {
                reduce(&mut out);
                pending = 0;
            }
        }
    }

    let mut terms = Vec::new();
    let mut digits = vec![0u32; k];
    for cell in 0..cells {
        let mut nonzero = false;
        for (s, d) in digits.iter_mut().enumerate() {
            *d = out[s * cells + cell].to_u32() % p;
            nonzero |= *d != 0;
        }
        if !nonzero {
            continue;
        }
        let mut rest = cell;
        let exps: Exponents = strides
            .iter()
            .map(|&s| {
                let e = rest / s;
                rest %= s;
                e as u32
            })
            .collect();
        terms.push((Monomial(exps), tables.index_of_digits(&digits)));
    }
    terms.sort_unstable_by(|x, y| y.0.cmp(&x.0));
    OrePolynomial::from_sorted(ring, terms)
}
