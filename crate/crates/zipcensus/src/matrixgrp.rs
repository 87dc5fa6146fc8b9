//! Brute-force matrix oracle over small finite fields.
//!
//! The symbolic layer predicts every stabilizer component group by formula.
//! This module checks the predictions the hard way: build the monomial lift
//! of y*w, spell out the twisted Frobenius h -> phi(g h g^{-1}) on actual
//! matrices, and enumerate its fixed points inside the block Levi.
//!
//! Enumeration is feasible because the twist permutes the Levi blocks: a
//! fixed point is determined by one free block per orbit, so we enumerate a
//! single block per orbit, recover the dependent blocks by iterating the
//! twist (identity blocks fill the unrelated slots and stay out of the way),
//! and keep the candidates whose orbit closes up.

use crate::finfield::{split_prime_power, Field, FieldError};
use crate::weyl::{CoxeterDescriptor, CoxeterFamily, WeylElement};
use crate::zipdata::{Stratum, ZipDatum};
use rayon::prelude::*;
use std::collections::HashMap;
use thiserror::Error;

/// Hard cap on candidate evaluations per oracle call.
pub const CANDIDATE_BUDGET: u64 = 10_000_000;
/// Largest packed field (full multiplication table in memory).
pub const PACKED_FIELD_CAP: u64 = 2048;
/// Largest element set conjugacy counting will accept.
pub const CLASS_COUNT_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("candidate space of size {needed} exceeds the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("enumeration needs F_{{{q}^{m}}}, beyond the packed-field cap of {cap} elements")]
    FieldTooLarge { q: u64, m: u32, cap: u64 },
    #[error("conjugacy counting is capped at {cap} elements, got {got}")]
    TooManyElements { got: usize, cap: usize },
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("internal consistency check failed: {0}")]
    Inconsistent(&'static str),
    #[error(transparent)]
    Field(#[from] FieldError),
}

// ---- packed field: F_{q^m} with all arithmetic as table lookups ----

/// F_{q^m} with elements renamed to indices 0..size. Index i is the element
/// whose coefficient vector (in the deterministic modulus of [`Field`]) reads
/// i in base p, so index 0 is zero and index 1 is one.
#[derive(Clone)]
pub struct PackedField {
    q: u64,
    p: u64,
    deg: u32,
    size: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

impl std::fmt::Debug for PackedField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PackedField(q={}, deg={}, size={})", self.q, self.deg, self.size)
    }
}

impl PackedField {
    pub fn new(q: u64, deg: u32) -> Result<PackedField, OracleError> {
        if deg == 0 {
            return Err(OracleError::FieldTooLarge { q, m: deg, cap: PACKED_FIELD_CAP });
        }
        let mut size_u64 = 1u64;
        for _ in 0..deg {
            size_u64 = size_u64.saturating_mul(q);
        }
        if size_u64 > PACKED_FIELD_CAP {
            return Err(OracleError::FieldTooLarge { q, m: deg, cap: PACKED_FIELD_CAP });
        }
        let field = Field::extension_of(q, deg as usize)?;
        let p = field.p();
        let size = size_u64 as usize;
        let n1 = (size - 1) as u64;

        let idx_of = |coeffs: &[u64]| -> usize {
            coeffs.iter().rev().fold(0usize, |v, &c| v * p as usize + c as usize)
        };

        // discrete logs relative to the canonical primitive generator
        let g = field.generator();
        let mut pow_to_idx = vec![0u16; size - 1];
        let mut dlog = vec![0u64; size];
        let mut cur = field.one();
        for k in 0..size - 1 {
            let i = idx_of(cur.coeffs());
            pow_to_idx[k] = i as u16;
            dlog[i] = k as u64;
            cur = cur.mul(&g).unwrap();
        }
        assert!(cur.is_one(), "generator order must be size - 1");

        let digitwise = |a: u64, b: u64, op: fn(u64, u64, u64) -> u64| -> u16 {
            let (mut x, mut y, mut out, mut place) = (a, b, 0u64, 1u64);
            while x > 0 || y > 0 {
                out += op(x % p, y % p, p) * place;
                x /= p;
                y /= p;
                place *= p;
            }
            out as u16
        };
        fn addp(a: u64, b: u64, p: u64) -> u64 {
            (a + b) % p
        }
        fn negp(a: u64, _b: u64, p: u64) -> u64 {
            (p - a) % p
        }

        let mut add = vec![0u16; size * size];
        for a in 0..size {
            for b in 0..size {
                add[a * size + b] = digitwise(a as u64, b as u64, addp);
            }
        }
        let mut mul = vec![0u16; size * size];
        for a in 1..size {
            for b in 1..size {
                mul[a * size + b] = pow_to_idx[((dlog[a] + dlog[b]) % n1) as usize];
            }
        }
        let mut neg = vec![0u16; size];
        let mut inv = vec![0u16; size];
        let mut frob = vec![0u16; size];
        for a in 1..size {
            neg[a] = digitwise(a as u64, 0, negp);
            inv[a] = pow_to_idx[((n1 - dlog[a]) % n1) as usize];
            frob[a] = pow_to_idx[(dlog[a] * (q % n1) % n1) as usize];
        }
        Ok(PackedField { q, p, deg, size, add, mul, neg, inv, frob })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Degree over F_q.
    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u16, b: u16) -> u16 {
        self.add(a, self.neg(b))
    }

    /// Multiplicative inverse; 0 maps to 0, callers guard.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    /// The q-power map.
    #[inline]
    pub fn frob(&self, a: u16) -> u16 {
        self.frob[a as usize]
    }

    pub fn in_base_field(&self, a: u16) -> bool {
        self.frob[a as usize] == a
    }

    /// Indices of F_q^x inside this extension.
    pub fn base_units(&self) -> Vec<u16> {
        (1..self.size as u16).filter(|&a| self.in_base_field(a)).collect()
    }

    // ---- matrices over the packed field ----

    pub fn mat_mul(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let n = x.n;
        debug_assert_eq!(n, y.n);
        let mut out = vec![0u16; n * n];
        for i in 0..n {
            for k in 0..n {
                let xik = x.a[i * n + k];
                if xik == 0 {
                    continue;
                }
                for j in 0..n {
                    let ykj = y.a[k * n + j];
                    if ykj != 0 {
                        out[i * n + j] = self.add(out[i * n + j], self.mul(xik, ykj));
                    }
                }
            }
        }
        Matrix { n, a: out }
    }

    /// Gauss-Jordan inverse; None for singular input.
    pub fn mat_inv(&self, x: &Matrix) -> Option<Matrix> {
        let n = x.n;
        let mut a = x.a.clone();
        let mut b = Matrix::identity(n).a;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    b.swap(pivot * n + j, col * n + j);
                }
            }
            let s = self.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = self.mul(s, a[col * n + j]);
                b[col * n + j] = self.mul(s, b[col * n + j]);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[r * n + col];
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = self.sub(a[r * n + j], self.mul(f, a[col * n + j]));
                    b[r * n + j] = self.sub(b[r * n + j], self.mul(f, b[col * n + j]));
                }
            }
        }
        Some(Matrix { n, a: b })
    }

    /// Entrywise q^k-power.
    pub fn mat_frob(&self, x: &Matrix, k: u32) -> Matrix {
        let mut a = x.a.clone();
        for _ in 0..k % self.deg.max(1) {
            for v in a.iter_mut() {
                *v = self.frob(*v);
            }
        }
        Matrix { n: x.n, a }
    }

    pub fn mat_scale(&self, c: u16, x: &Matrix) -> Matrix {
        Matrix { n: x.n, a: x.a.iter().map(|&v| self.mul(c, v)).collect() }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Matrix {
    pub n: usize,
    pub a: Vec<u16>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut a = vec![0u16; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        Matrix { n, a }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u16) {
        self.a[i * self.n + j] = v;
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut a = vec![0u16; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        Matrix { n, a }
    }
}

// ---- signed monomial matrices: lifts of Weyl elements ----

/// Integer matrix with entries in {-1, 0, 1}, one nonzero per row and column.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedMatrix {
    pub n: usize,
    pub a: Vec<i8>,
}

impl SignedMatrix {
    pub fn identity(n: usize) -> SignedMatrix {
        let mut a = vec![0i8; n * n];
        for i in 0..n {
            a[i * n + i] = 1;
        }
        SignedMatrix { n, a }
    }

    /// The plain permutation matrix: column j carries +1 in row w(j).
    pub fn from_permutation(w: &WeylElement) -> SignedMatrix {
        let n = w.degree();
        let mut a = vec![0i8; n * n];
        for j in 1..=n {
            a[(w.apply(j) - 1) * n + (j - 1)] = 1;
        }
        SignedMatrix { n, a }
    }

    pub fn mul(&self, o: &SignedMatrix) -> SignedMatrix {
        let n = self.n;
        debug_assert_eq!(n, o.n);
        let mut a = vec![0i8; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    let y = o.a[k * n + j];
                    if y != 0 {
                        let v = i32::from(a[i * n + j]) + i32::from(x) * i32::from(y);
                        assert!((-1..=1).contains(&v), "product left the monomial range");
                        a[i * n + j] = v as i8;
                    }
                }
            }
        }
        SignedMatrix { n, a }
    }

    /// Signed permutation matrices are orthogonal.
    pub fn inverse(&self) -> SignedMatrix {
        let n = self.n;
        let mut a = vec![0i8; n * n];
        for i in 0..n {
            for j in 0..n {
                a[j * n + i] = self.a[i * n + j];
            }
        }
        SignedMatrix { n, a }
    }

    pub fn is_monomial(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).filter(|&j| self.a[i * n + j] != 0).count() == 1)
            && (0..n).all(|j| (0..n).filter(|&i| self.a[i * n + j] != 0).count() == 1)
    }

    /// Scalar modulo the characteristic: diagonal with all entries equal
    /// (signs are indistinguishable in characteristic 2).
    pub fn is_scalar_mod(&self, p: u64) -> bool {
        let n = self.n;
        for i in 0..n {
            for j in 0..n {
                if i != j && self.a[i * n + j] != 0 {
                    return false;
                }
            }
        }
        let d0 = self.a[0];
        if d0 == 0 {
            return false;
        }
        (0..n).all(|i| {
            let d = self.a[i * n + i];
            d != 0 && (p == 2 || d == d0)
        })
    }

    /// 1-based column-to-row images, ignoring signs.
    pub fn permutation(&self) -> Vec<usize> {
        let n = self.n;
        (0..n)
            .map(|j| (0..n).find(|&i| self.a[i * n + j] != 0).expect("monomial") + 1)
            .collect()
    }

    pub fn to_field(&self, f: &PackedField) -> Matrix {
        let a = self
            .a
            .iter()
            .map(|&v| match v {
                0 => 0,
                1 => 1,
                -1 => f.neg(1),
                _ => unreachable!("entries are 0 or +-1"),
            })
            .collect();
        Matrix { n: self.n, a }
    }
}

// ---- lifts ----

/// The monomial lift of y*w together with the base field size.
#[derive(Clone, Debug)]
pub struct TwistData {
    pub lift: SignedMatrix,
    pub q: u64,
}

/// Lift of the symplectic simple reflection s_i inside Sp_2n. For i < n the
/// nonzero pattern is +1 at (i, i+1), -1 at (i+1, i), -1 at (2n-i, 2n+1-i),
/// +1 at (2n+1-i, 2n-i); for i = n it is +1 at (n, n+1), -1 at (n+1, n).
/// These are the standard one-parameter lifts, so reduced-word products do
/// not depend on the chosen word.
pub fn sp_generator_lift(n: usize, i: usize) -> SignedMatrix {
    let m = 2 * n;
    let mut out = SignedMatrix::identity(m);
    let idx = |r: usize, c: usize| (r - 1) * m + (c - 1);
    if i == n {
        out.a[idx(n, n)] = 0;
        out.a[idx(n + 1, n + 1)] = 0;
        out.a[idx(n, n + 1)] = 1;
        out.a[idx(n + 1, n)] = -1;
    } else {
        for r in [i, i + 1, m - i, m + 1 - i] {
            out.a[idx(r, r)] = 0;
        }
        out.a[idx(i, i + 1)] = 1;
        out.a[idx(i + 1, i)] = -1;
        out.a[idx(m - i, m + 1 - i)] = -1;
        out.a[idx(m + 1 - i, m - i)] = 1;
    }
    out
}

/// The block matrix ((0, 1_n), (-1_n, 0)): the preferred lift of the twist
/// element of the two-block symplectic datum.
pub fn sp_siegel_twist_lift(n: usize) -> SignedMatrix {
    let m = 2 * n;
    let mut a = vec![0i8; m * m];
    for i in 0..n {
        a[i * m + (n + i)] = 1;
        a[(n + i) * m + i] = -1;
    }
    SignedMatrix { n: m, a }
}

fn sp_word_lift(cox: &CoxeterDescriptor, u: &WeylElement) -> SignedMatrix {
    let mut out = SignedMatrix::identity(2 * cox.n());
    for i in cox.canonical_word(u) {
        out = out.mul(&sp_generator_lift(cox.n(), i));
    }
    out
}

fn sp_element_lift(cox: &CoxeterDescriptor, u: &WeylElement) -> SignedMatrix {
    let n = cox.n();
    let siegel: Vec<usize> = (1..=n).map(|k| n + k).chain(1..=n).collect();
    if u.one_line() == siegel {
        sp_siegel_twist_lift(n)
    } else {
        sp_word_lift(cox, u)
    }
}

/// Monomial lift of y*w for the stratum w: plain permutation matrices for
/// the linear and unitary families, signed reduced-word products (with the
/// preferred block lift of the two-block twist element) for the symplectic.
pub fn build_lift(d: &ZipDatum, w: &WeylElement) -> TwistData {
    let cox = d.cox();
    let y = d.twist();
    let lift = match cox.family() {
        CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => {
            SignedMatrix::from_permutation(&y.compose(w))
        }
        CoxeterFamily::TypeC => sp_element_lift(cox, &y).mul(&sp_element_lift(cox, w)),
    };
    TwistData { lift, q: d.q() }
}

// ---- group enumeration from the defining predicate ----

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupKind {
    GeneralLinear,
    Symplectic,
    Unitary,
    UnitarySimilitude,
}

#[derive(Debug, Clone)]
pub struct MatrixGroupSpec {
    pub kind: GroupKind,
    /// Matrix dimension (2n for Symplectic).
    pub size: usize,
    pub q: u64,
}

/// One element: a matrix over the packed field, plus the similitude scalar
/// (the unitary factor c; fixed to one for the other families).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct GroupElement {
    pub mat: Matrix,
    pub sim: u16,
}

/// A fully enumerated finite matrix group, sorted for determinism.
#[derive(Debug)]
pub struct EnumeratedGroup {
    pub field: PackedField,
    pub elements: Vec<GroupElement>,
}

impl EnumeratedGroup {
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
}

pub fn elem_mul(f: &PackedField, a: &GroupElement, b: &GroupElement) -> GroupElement {
    GroupElement { mat: f.mat_mul(&a.mat, &b.mat), sim: f.mul(a.sim, b.sim) }
}

pub fn elem_inv(f: &PackedField, a: &GroupElement) -> Option<GroupElement> {
    Some(GroupElement { mat: f.mat_inv(&a.mat)?, sim: f.inv(a.sim) })
}

/// The symplectic form: antidiag(1) in the upper right n x n block,
/// antidiag(-1) in the lower left.
fn sp_form(f: &PackedField, dim: usize) -> Matrix {
    let n = dim / 2;
    let mut j = Matrix { n: dim, a: vec![0; dim * dim] };
    for i in 1..=n {
        j.set(i - 1, 2 * n - i, 1);
        j.set(2 * n - i, i - 1, f.neg(1));
    }
    j
}

fn antidiag(dim: usize) -> Matrix {
    let mut m = Matrix { n: dim, a: vec![0; dim * dim] };
    for i in 0..dim {
        m.set(i, dim - 1 - i, 1);
    }
    m
}

/// g -> psi * conj(g)^T * psi, the hermitian adjoint for the antidiagonal form.
fn dagger(f: &PackedField, psi: &Matrix, g: &Matrix) -> Matrix {
    let conj_t = f.mat_frob(g, 1).transpose();
    f.mat_mul(&f.mat_mul(psi, &conj_t), psi)
}

/// If x is c * identity with c nonzero, returns c.
fn scalar_of(x: &Matrix) -> Option<u16> {
    let n = x.n;
    let c = x.get(0, 0);
    if c == 0 {
        return None;
    }
    for i in 0..n {
        for j in 0..n {
            if x.get(i, j) != if i == j { c } else { 0 } {
                return None;
            }
        }
    }
    Some(c)
}

/// Enumerate every matrix satisfying the defining predicate of the group.
pub fn enumerate_group(spec: &MatrixGroupSpec, budget: u64) -> Result<EnumeratedGroup, OracleError> {
    let deg = match spec.kind {
        GroupKind::GeneralLinear | GroupKind::Symplectic => 1,
        GroupKind::Unitary | GroupKind::UnitarySimilitude => 2,
    };
    if spec.kind == GroupKind::Symplectic && spec.size % 2 != 0 {
        return Err(OracleError::Unsupported(format!(
            "symplectic groups need even matrix dimension, got {}",
            spec.size
        )));
    }
    let f = PackedField::new(spec.q, deg)?;
    let n = spec.size;
    let mut need = 1u128;
    for _ in 0..n * n {
        need = need.saturating_mul(f.size() as u128);
    }
    if need > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed: need, budget });
    }
    let form = sp_form(&f, n);
    let psi = antidiag(n);
    let accept = |m: &Matrix| -> Option<u16> {
        match spec.kind {
            GroupKind::GeneralLinear => f.mat_inv(m).map(|_| 1),
            GroupKind::Symplectic => {
                let t = f.mat_mul(&f.mat_mul(&m.transpose(), &form), m);
                (t == form).then_some(1)
            }
            GroupKind::Unitary => {
                let prod = f.mat_mul(&dagger(&f, &psi, m), m);
                (scalar_of(&prod) == Some(1)).then_some(1)
            }
            GroupKind::UnitarySimilitude => {
                let prod = f.mat_mul(&dagger(&f, &psi, m), m);
                let c = scalar_of(&prod)?;
                f.in_base_field(c).then_some(c)
            }
        }
    };
    let cells = n * n;
    let size = f.size() as u16;
    let by_first: Vec<Vec<GroupElement>> = (0..size)
        .into_par_iter()
        .map(|v0| {
            let mut out = Vec::new();
            let mut digits = vec![0u16; cells];
            digits[0] = v0;
            loop {
                let m = Matrix { n, a: digits.clone() };
                if let Some(sim) = accept(&m) {
                    out.push(GroupElement { mat: m, sim });
                }
                // odometer over all cells but the first
                let mut i = 1;
                loop {
                    if i == cells {
                        return out;
                    }
                    digits[i] += 1;
                    if digits[i] == size {
                        digits[i] = 0;
                        i += 1;
                    } else {
                        break;
                    }
                }
            }
        })
        .collect();
    let mut elements: Vec<GroupElement> = by_first.into_iter().flatten().collect();
    elements.sort_unstable();
    Ok(EnumeratedGroup { field: f, elements })
}

// ---- twisted fixed points on a stratum Levi ----

/// Interval decomposition of 1..=n induced by a bond set (bond i glues i and
/// i+1). Returned as inclusive (start, end) pairs.
fn intervals(n: usize, bonds: &[usize]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut start = 1;
    for x in 1..=n {
        if x == n || !bonds.contains(&x) {
            out.push((start, x));
            start = x + 1;
        }
    }
    out
}

fn lcm(a: u32, b: u32) -> u32 {
    fn gcd(a: u32, b: u32) -> u32 {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

fn perm_order(images: &[usize]) -> u32 {
    let n = images.len();
    let mut seen = vec![false; n + 1];
    let mut ord = 1;
    for s in 1..=n {
        if seen[s] {
            continue;
        }
        let (mut len, mut x) = (0u32, s);
        while !seen[x] {
            seen[x] = true;
            x = images[x - 1];
            len += 1;
        }
        ord = lcm(ord, len);
    }
    ord
}

/// Smallest m with lift^m scalar in characteristic p; conjugation by a
/// scalar is trivial, so after m twisted steps only the plain q^m-Frobenius
/// remains.
fn scalar_exponent(lift: &SignedMatrix, p: u64) -> Result<u32, OracleError> {
    let mut acc = lift.clone();
    for m in 1..=512 {
        if acc.is_scalar_mod(p) {
            return Ok(m);
        }
        acc = acc.mul(lift);
    }
    Err(OracleError::Inconsistent("monomial lift order out of range"))
}

struct Engine<'a> {
    f: &'a PackedField,
    family: CoxeterFamily,
    dim: usize,
    half: usize,
    conj: Matrix,
    conj_inv: Matrix,
    sim: u16,
}

fn read_block(h: &Matrix, (a, b): (usize, usize)) -> Matrix {
    let k = b - a + 1;
    let mut out = Matrix { n: k, a: vec![0; k * k] };
    for i in 0..k {
        for j in 0..k {
            out.set(i, j, h.get(a - 1 + i, a - 1 + j));
        }
    }
    out
}

impl<'a> Engine<'a> {
    /// One twisted-Frobenius step. For the split families this is
    /// N * h^(q) * N^{-1}; for the unitary family it is the similitude-scaled
    /// conjugate inverse transpose, with the antidiagonal form folded into
    /// the conjugating matrix.
    fn tau(&self, h: &Matrix) -> Option<Matrix> {
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeC => {
                let hq = self.f.mat_frob(h, 1);
                Some(self.f.mat_mul(&self.f.mat_mul(&self.conj, &hq), &self.conj_inv))
            }
            CoxeterFamily::TypeATwisted => {
                let hq = self.f.mat_frob(h, 1);
                let t = self.f.mat_inv(&hq)?.transpose();
                let m = self.f.mat_mul(&self.f.mat_mul(&self.conj, &t), &self.conj_inv);
                Some(self.f.mat_scale(self.sim, &m))
            }
        }
    }

    /// Writes a block at a slot of the ground identity matrix; the
    /// symplectic family also fills the mirrored block forced by the form.
    fn embed(&self, (a, b): (usize, usize), v: &Matrix) -> Option<Matrix> {
        let mut h = Matrix::identity(self.dim);
        let k = b - a + 1;
        for i in 0..k {
            for j in 0..k {
                h.set(a - 1 + i, a - 1 + j, v.get(i, j));
            }
        }
        if self.family == CoxeterFamily::TypeC {
            let vinv = self.f.mat_inv(v)?;
            let (ma, _mb) = (2 * self.half + 1 - b, 2 * self.half + 1 - a);
            for i in 0..k {
                for j in 0..k {
                    // antidiag * v^{-T} * antidiag, written into the mirror slot
                    h.set(ma - 1 + i, ma - 1 + j, vinv.get(k - 1 - j, k - 1 - i));
                }
            }
        }
        Some(h)
    }

    /// Propagates one candidate block around a slot orbit; returns the block
    /// values along the orbit when the closing equation holds.
    fn run_cycle(
        &self,
        slots: &[(usize, usize)],
        cycle: &[usize],
        cand: &Matrix,
    ) -> Option<Vec<Matrix>> {
        let mut h = self.embed(slots[cycle[0]], cand)?;
        let mut blocks = vec![cand.clone()];
        for t in 1..=cycle.len() {
            h = self.tau(&h)?;
            if t < cycle.len() {
                blocks.push(read_block(&h, slots[cycle[t]]));
            } else if read_block(&h, slots[cycle[0]]) != *cand {
                return None;
            }
        }
        Some(blocks)
    }

    fn solve_cycle(&self, slots: &[(usize, usize)], cycle: &[usize]) -> Vec<Vec<Matrix>> {
        let (a, b) = slots[cycle[0]];
        let k = b - a + 1;
        let cells = k * k;
        let size = self.f.size() as u16;
        let by_first: Vec<Vec<Vec<Matrix>>> = (0..size)
            .into_par_iter()
            .map(|v0| {
                let mut out = Vec::new();
                let mut digits = vec![0u16; cells];
                digits[0] = v0;
                loop {
                    let cand = Matrix { n: k, a: digits.clone() };
                    if self.f.mat_inv(&cand).is_some() {
                        if let Some(blocks) = self.run_cycle(slots, cycle, &cand) {
                            out.push(blocks);
                        }
                    }
                    let mut i = 1;
                    loop {
                        if i == cells {
                            return out;
                        }
                        digits[i] += 1;
                        if digits[i] == size {
                            digits[i] = 0;
                            i += 1;
                        } else {
                            break;
                        }
                    }
                }
            })
            .collect();
        by_first.into_iter().flatten().collect()
    }

    /// After m steps the twist must reduce to the plain q^m-Frobenius, which
    /// is the identity on F_{q^m}. Checked on a sample matrix.
    fn check_exponent(&self, m: u32) -> Result<(), OracleError> {
        let size = self.f.size() as u16;
        let sample = match self.family {
            CoxeterFamily::TypeATwisted => {
                // invertible: a diagonal of assorted units
                let mut s = Matrix::identity(self.dim);
                for i in 0..self.dim {
                    s.set(i, i, 1 + ((i as u16) % (size - 1)));
                }
                s
            }
            _ => {
                // the twist step is linear, any dense matrix will do
                let mut s = Matrix { n: self.dim, a: vec![0; self.dim * self.dim] };
                for i in 0..self.dim {
                    for j in 0..self.dim {
                        s.set(i, j, ((i * self.dim + j) % self.f.size()) as u16);
                    }
                }
                s
            }
        };
        let mut h = sample.clone();
        for _ in 0..m {
            h = self.tau(&h).ok_or(OracleError::Inconsistent("sample step not invertible"))?;
        }
        if h != sample {
            return Err(OracleError::Inconsistent("m-fold twist is not the plain Frobenius"));
        }
        Ok(())
    }
}

/// Maps each slot to the slot holding its image under the position
/// permutation u. Blocks must map onto whole blocks; for the symplectic
/// family an image in the bottom half is folded back through the mirror.
fn slot_map(
    family: CoxeterFamily,
    u: &WeylElement,
    slots: &[(usize, usize)],
    half: usize,
) -> Result<Vec<usize>, OracleError> {
    let torn = || OracleError::Inconsistent("twist tears a Levi block");
    let mut out = Vec::with_capacity(slots.len());
    for &(a, b) in slots {
        let imgs: Vec<usize> = (a..=b).map(|x| u.apply(x)).collect();
        let lo = *imgs.iter().min().unwrap();
        let hi = *imgs.iter().max().unwrap();
        let (lo, hi) = if family == CoxeterFamily::TypeC && lo > half {
            (2 * half + 1 - hi, 2 * half + 1 - lo)
        } else {
            (lo, hi)
        };
        if hi - lo != b - a {
            return Err(torn());
        }
        let target = slots.iter().position(|&s| s == (lo, hi)).ok_or_else(torn)?;
        out.push(target);
    }
    Ok(out)
}

fn orbit_cycles(map: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; map.len()];
    let mut cycles = Vec::new();
    for s in 0..map.len() {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = map[x];
        }
        cycles.push(cyc);
    }
    cycles
}

/// The fixed points of h -> phi(g h g^{-1}) on the Levi of the stratum,
/// enumerated over F_{q^m} for the smallest workable m.
pub fn twisted_fixed_points(
    d: &ZipDatum,
    s: &Stratum,
    budget: u64,
) -> Result<EnumeratedGroup, OracleError> {
    let cox = d.cox();
    let family = cox.family();
    let n = cox.n();
    let p = split_prime_power(d.q())?.0;
    let twist = build_lift(d, &s.rep);

    if family == CoxeterFamily::TypeC && s.levi_type.contains(&n) {
        if s.levi_type.len() == cox.rank() && twist.lift.is_scalar_mod(p) {
            // full Levi with trivial twist: the group itself over F_q
            return enumerate_group(
                &MatrixGroupSpec { kind: GroupKind::Symplectic, size: 2 * n, q: d.q() },
                budget,
            );
        }
        return Err(OracleError::Unsupported(
            "symplectic Levi block crossing the middle".into(),
        ));
    }

    // twist data in matrix form and the enumeration degree
    let (m, conj) = match family {
        CoxeterFamily::TypeA | CoxeterFamily::TypeC => {
            (scalar_exponent(&twist.lift, p)?, twist.lift.clone())
        }
        CoxeterFamily::TypeATwisted => {
            // fold the antidiagonal of the hermitian form into the lift:
            // the conjugating matrix becomes the permutation w_{0,I} w
            let w0 = SignedMatrix::from_permutation(&cox.longest_element());
            let folded = w0.mul(&twist.lift);
            (lcm(2, perm_order(&folded.permutation())), folded)
        }
    };
    let f = PackedField::new(d.q(), m)?;
    let dim = match family {
        CoxeterFamily::TypeC => 2 * n,
        _ => n,
    };

    let bonds: Vec<usize> = s.levi_type.iter().copied().collect();
    let slots = intervals(n, &bonds);
    let u = match family {
        CoxeterFamily::TypeA | CoxeterFamily::TypeC => d.twist().compose(&s.rep),
        CoxeterFamily::TypeATwisted => cox.longest_element().compose(&d.twist()).compose(&s.rep),
    };
    let smap = slot_map(family, &u, &slots, n)?;
    let cycles = orbit_cycles(&smap);

    let sims: Vec<u16> = match family {
        CoxeterFamily::TypeATwisted => f.base_units(),
        _ => vec![1],
    };
    let mut need = 0u128;
    for cyc in &cycles {
        let (a, b) = slots[cyc[0]];
        let k = b - a + 1;
        let mut c = 1u128;
        for _ in 0..k * k {
            c = c.saturating_mul(f.size() as u128);
        }
        need = need.saturating_add(c.saturating_mul(sims.len() as u128));
    }
    if need > budget as u128 {
        return Err(OracleError::BudgetExceeded { needed: need, budget });
    }

    let conj_f = conj.to_field(&f);
    let conj_f_inv = conj.inverse().to_field(&f);
    let mut elements: Vec<GroupElement> = Vec::new();
    for &c in &sims {
        let eng = Engine {
            f: &f,
            family,
            dim,
            half: n,
            conj: conj_f.clone(),
            conj_inv: conj_f_inv.clone(),
            sim: c,
        };
        eng.check_exponent(m)?;
        let per_cycle: Vec<Vec<Vec<Matrix>>> =
            cycles.iter().map(|cyc| eng.solve_cycle(&slots, cyc)).collect();
        if per_cycle.iter().any(|sols| sols.is_empty()) {
            continue;
        }
        // cross product over the orbits
        let mut pick = vec![0usize; per_cycle.len()];
        loop {
            let mut h = Matrix::identity(dim);
            for (ci, cyc) in cycles.iter().enumerate() {
                for (t, &slot) in cyc.iter().enumerate() {
                    let block = &per_cycle[ci][pick[ci]][t];
                    let embedded = eng
                        .embed(slots[slot], block)
                        .ok_or(OracleError::Inconsistent("singular block in a solution"))?;
                    let (a, b) = slots[slot];
                    for i in 0..dim {
                        for j in 0..dim {
                            let in_slot = i + 1 >= a && i + 1 <= b && j + 1 >= a && j + 1 <= b;
                            let in_mirror = family == CoxeterFamily::TypeC
                                && i + 1 >= 2 * n + 1 - b
                                && i + 1 <= 2 * n + 1 - a
                                && j + 1 >= 2 * n + 1 - b
                                && j + 1 <= 2 * n + 1 - a;
                            if in_slot || in_mirror {
                                h.set(i, j, embedded.get(i, j));
                            }
                        }
                    }
                }
            }
            elements.push(GroupElement { mat: h, sim: c });
            let mut i = 0;
            loop {
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
                if pick[i] == per_cycle[i].len() {
                    pick[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
            if i == pick.len() {
                break;
            }
        }
    }
    elements.sort_unstable();

    verify_fixed_points(&f, family, dim, n, &conj_f, &conj_f_inv, &elements)?;
    Ok(EnumeratedGroup { field: f, elements })
}

/// Defensive re-checks on the assembled set: every element satisfies the
/// defining equation, symplectic elements respect the form, the set contains
/// the identity and inverses, and products stay inside (exhaustively for
/// small sets, on a sample grid for large ones).
fn verify_fixed_points(
    f: &PackedField,
    family: CoxeterFamily,
    dim: usize,
    half: usize,
    conj: &Matrix,
    conj_inv: &Matrix,
    elements: &[GroupElement],
) -> Result<(), OracleError> {
    let form = sp_form(f, dim);
    for e in elements {
        let eng = Engine {
            f,
            family,
            dim,
            half,
            conj: conj.clone(),
            conj_inv: conj_inv.clone(),
            sim: e.sim,
        };
        let t = eng.tau(&e.mat).ok_or(OracleError::Inconsistent("fixed point not invertible"))?;
        if t != e.mat {
            return Err(OracleError::Inconsistent("defining equation fails on an element"));
        }
        if family == CoxeterFamily::TypeC {
            let g = f.mat_mul(&f.mat_mul(&e.mat.transpose(), &form), &e.mat);
            if g != form {
                return Err(OracleError::Inconsistent("element leaves the symplectic form"));
            }
        }
    }
    let index: HashMap<&GroupElement, usize> =
        elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let id = GroupElement { mat: Matrix::identity(dim), sim: 1 };
    if !index.contains_key(&id) {
        return Err(OracleError::Inconsistent("identity missing from the fixed points"));
    }
    for e in elements {
        let inv = elem_inv(f, e).ok_or(OracleError::Inconsistent("fixed point not invertible"))?;
        if !index.contains_key(&inv) {
            return Err(OracleError::Inconsistent("inverse missing from the fixed points"));
        }
    }
    let n = elements.len();
    let step = if n <= 512 { 1 } else { n.div_ceil(64) };
    for a in elements.iter().step_by(step) {
        for b in elements.iter().step_by(step) {
            if !index.contains_key(&elem_mul(f, a, b)) {
                return Err(OracleError::Inconsistent("product escapes the fixed points"));
            }
        }
    }
    Ok(())
}

/// Number of conjugacy classes, by orbit sweeps. Requires the multiplication
/// to close (signalling an upstream bug otherwise).
pub fn conjugacy_class_count(g: &EnumeratedGroup) -> Result<u64, OracleError> {
    let n = g.elements.len();
    if n > CLASS_COUNT_CAP {
        return Err(OracleError::TooManyElements { got: n, cap: CLASS_COUNT_CAP });
    }
    let f = &g.field;
    let index: HashMap<&GroupElement, usize> =
        g.elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let inverses: Vec<GroupElement> = g
        .elements
        .iter()
        .map(|e| elem_inv(f, e).ok_or(OracleError::Inconsistent("singular element")))
        .collect::<Result<_, _>>()?;
    let mut assigned = vec![false; n];
    let mut classes = 0u64;
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        classes += 1;
        for (h, hinv) in g.elements.iter().zip(&inverses) {
            let c = elem_mul(f, &elem_mul(f, h, &g.elements[i]), hinv);
            let j = *index
                .get(&c)
                .ok_or(OracleError::Inconsistent("conjugate escapes the set"))?;
            assigned[j] = true;
        }
    }
    Ok(classes)
}
