//! Symbolic stabilizer component groups.
//!
//! For a stratum with Levi type K_w, the component group is the fixed point
//! set of the twisted endomorphism phi . int(y w) on the Levi of type K_w.
//! This module names those fixed point groups symbolically, as products of
//! atoms (tori over extension fields, norm-one kernels, general linear and
//! unitary blocks, or a whole ambient group) or as a two-step extension in
//! the twisted linear family. Orders are exact big integers in q.
//!
//! The analysis runs on the block partition cut out by K_w: the twisting
//! permutation moves the blocks in cycles, and each cycle contributes one
//! atom determined by its length, its block size, and (in the symplectic
//! case) how often the cycle crosses the symplectic pairing.

use crate::weyl::CoxeterFamily;
use crate::zipdata::{Stratum, ZipDatum};
use num_bigint::BigUint;
use num_traits::One;
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum StabilizerError {
    #[error("unsupported configuration: {0}")]
    Unsupported(String),
    #[error("twisting action violates block structure: {0}")]
    BrokenBlocks(String),
}

/// One indecomposable factor of a component group.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    /// Multiplicative group of F_{q^degree}.
    TorusRes { degree: usize },
    /// Norm-one subgroup of F_{q^{2 degree}}^x over F_{q^degree}.
    NormKernel { degree: usize },
    /// GL_size over F_{q^degree}, size >= 2.
    GlBlock { size: usize, degree: usize },
    /// Unitary group U_size over F_{q^degree}, size >= 2.
    UBlock { size: usize, degree: usize },
    /// All F_q-points of an ambient group of the given family and rank.
    FullGroup { family: CoxeterFamily, rank: usize },
}

/// GL block, collapsing size 1 to a torus.
pub fn gl_block(size: usize, degree: usize) -> Atom {
    if size == 1 {
        Atom::TorusRes { degree }
    } else {
        Atom::GlBlock { size, degree }
    }
}

/// Unitary block, collapsing size 1 to a norm-one kernel.
pub fn u_block(size: usize, degree: usize) -> Atom {
    if size == 1 {
        Atom::NormKernel { degree }
    } else {
        Atom::UBlock { size, degree }
    }
}

fn field_sym(degree: usize) -> String {
    if degree == 1 {
        "F_q".to_string()
    } else {
        format!("F_{{q^{degree}}}")
    }
}

fn pow(base: u64, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

/// prod_{i=1..n} (Q^i - (-1)^i) where Q = q^degree.
fn unitary_product(n: usize, q: u64, degree: usize) -> BigUint {
    let mut acc = BigUint::one();
    for i in 1..=n {
        let t = pow(q, degree * i);
        acc *= if i % 2 == 0 {
            t - BigUint::one()
        } else {
            t + BigUint::one()
        };
    }
    acc
}

fn gl_order(n: usize, q: u64, degree: usize) -> BigUint {
    // prod_{i=0..n-1} (Q^n - Q^i)
    let mut acc = BigUint::one();
    for i in 0..n {
        acc *= pow(q, degree * n) - pow(q, degree * i);
    }
    acc
}

impl Atom {
    pub fn order_at(&self, q: u64) -> BigUint {
        match *self {
            Atom::TorusRes { degree } => pow(q, degree) - BigUint::one(),
            Atom::NormKernel { degree } => pow(q, degree) + BigUint::one(),
            Atom::GlBlock { size, degree } => gl_order(size, q, degree),
            Atom::UBlock { size, degree } => {
                pow(q, degree * size * (size - 1) / 2) * unitary_product(size, q, degree)
            }
            Atom::FullGroup { family, rank } => match family {
                CoxeterFamily::TypeA => gl_order(rank, q, 1),
                CoxeterFamily::TypeC => {
                    let mut acc = pow(q, rank * rank);
                    for i in 1..=rank {
                        acc *= pow(q, 2 * i) - BigUint::one();
                    }
                    acc
                }
                CoxeterFamily::TypeATwisted => {
                    // similitude group: multiplier times the isometry group
                    (pow(q, 1) - BigUint::one())
                        * pow(q, rank * (rank - 1) / 2)
                        * unitary_product(rank, q, 1)
                }
            },
        }
    }

    pub fn is_abelian(&self) -> bool {
        match *self {
            Atom::TorusRes { .. } | Atom::NormKernel { .. } => true,
            Atom::GlBlock { size, .. } | Atom::UBlock { size, .. } => size < 2,
            Atom::FullGroup { family, rank } => {
                rank < 2 && !matches!(family, CoxeterFamily::TypeC)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match *self {
            Atom::TorusRes { degree } => serde_json::json!({
                "kind": "torus_res", "degree": degree,
            }),
            Atom::NormKernel { degree } => serde_json::json!({
                "kind": "norm_kernel", "degree": degree,
            }),
            Atom::GlBlock { size, degree } => serde_json::json!({
                "kind": "gl_block", "size": size, "degree": degree,
            }),
            Atom::UBlock { size, degree } => serde_json::json!({
                "kind": "u_block", "size": size, "degree": degree,
            }),
            Atom::FullGroup { family, rank } => serde_json::json!({
                "kind": "full_group", "family": family_code(family), "rank": rank,
            }),
        }
    }
}

pub fn family_code(family: CoxeterFamily) -> &'static str {
    match family {
        CoxeterFamily::TypeA => "gl",
        CoxeterFamily::TypeC => "sp",
        CoxeterFamily::TypeATwisted => "gu",
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::TorusRes { degree } => write!(f, "{}^x", field_sym(degree)),
            Atom::NormKernel { degree } => {
                write!(f, "N1({}/{})", field_sym(2 * degree), field_sym(degree))
            }
            Atom::GlBlock { size, degree } => write!(f, "GL_{}({})", size, field_sym(degree)),
            Atom::UBlock { size, degree } => write!(f, "U_{}({})", size, field_sym(degree)),
            Atom::FullGroup { family, rank } => match family {
                CoxeterFamily::TypeA => write!(f, "GL_{rank}(F_q)"),
                CoxeterFamily::TypeC => write!(f, "Sp_{}(F_q)", 2 * rank),
                CoxeterFamily::TypeATwisted => write!(f, "GU_{rank}(F_q)"),
            },
        }
    }
}

/// Two-step extension 1 -> kernel -> Pi -> quotient -> 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub kernel: Atom,
    pub quotient: Atom,
}

/// A component group: either a direct product of atoms, or an extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupDescriptor {
    pub factors: Vec<Atom>,
    pub extension: Option<Extension>,
}

impl GroupDescriptor {
    pub fn product(mut factors: Vec<Atom>) -> Self {
        factors.sort();
        GroupDescriptor {
            factors,
            extension: None,
        }
    }

    pub fn extension(kernel: Atom, quotient: Atom) -> Self {
        GroupDescriptor {
            factors: Vec::new(),
            extension: Some(Extension { kernel, quotient }),
        }
    }

    pub fn order_at(&self, q: u64) -> BigUint {
        let mut acc = BigUint::one();
        for a in &self.factors {
            acc *= a.order_at(q);
        }
        if let Some(ext) = &self.extension {
            acc *= ext.kernel.order_at(q);
            acc *= ext.quotient.order_at(q);
        }
        acc
    }

    /// True when the group is abelian for every q. The extension case relies
    /// on the fact that an extension with both ends of block size < 2 sits
    /// inside a torus times the multiplier line.
    pub fn is_abelian(&self) -> bool {
        self.factors.iter().all(Atom::is_abelian)
            && self
                .extension
                .as_ref()
                .map(|e| e.kernel.is_abelian() && e.quotient.is_abelian())
                .unwrap_or(true)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "factors": self.factors.iter().map(Atom::to_json).collect::<Vec<_>>(),
            "extension": self.extension.as_ref().map(|e| serde_json::json!({
                "kernel": e.kernel.to_json(),
                "quotient": e.quotient.to_json(),
            })),
            "display": self.to_string(),
            "abelian": self.is_abelian(),
        })
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ext) = &self.extension {
            return write!(f, "1 -> {} -> Pi -> {} -> 1", ext.kernel, ext.quotient);
        }
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.factors.len() {
            let mut j = i;
            while j < self.factors.len() && self.factors[j] == self.factors[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(self.factors[i].to_string());
            } else {
                parts.push(format!("({})^{}", self.factors[i], j - i));
            }
            i = j;
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// The symbolic component group of one stratum.
pub fn component_group(
    datum: &ZipDatum,
    stratum: &Stratum,
) -> Result<GroupDescriptor, StabilizerError> {
    let cox = datum.cox();
    let full: BTreeSet<usize> = (1..=cox.rank()).collect();
    if stratum.levi_type == full && !full.is_empty() {
        // central cocharacter: the one stratum carries the whole group
        return Ok(GroupDescriptor::product(vec![Atom::FullGroup {
            family: cox.family(),
            rank: cox.n(),
        }]));
    }
    match cox.family() {
        CoxeterFamily::TypeA => linear_descriptor(datum, stratum),
        CoxeterFamily::TypeC => symplectic_descriptor(datum, stratum),
        CoxeterFamily::TypeATwisted => twisted_descriptor(datum, stratum),
    }
}

/// Maximal intervals of 1..=n glued by bonds, plus leftover singletons.
fn interval_blocks(n: usize, bonds: &BTreeSet<usize>) -> Vec<Vec<usize>> {
    let mut blocks = Vec::new();
    let mut cur = vec![1];
    for i in 1..n {
        if bonds.contains(&i) {
            cur.push(i + 1);
        } else {
            blocks.push(std::mem::replace(&mut cur, vec![i + 1]));
        }
    }
    blocks.push(cur);
    blocks
}

/// Cycle decomposition of `image` (a permutation of 0..len) as index lists.
fn perm_cycles(image: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; image.len()];
    let mut cycles = Vec::new();
    for start in 0..image.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = vec![start];
        seen[start] = true;
        let mut at = image[start];
        while at != start {
            seen[at] = true;
            cyc.push(at);
            at = image[at];
        }
        cycles.push(cyc);
    }
    cycles
}

fn linear_descriptor(
    datum: &ZipDatum,
    stratum: &Stratum,
) -> Result<GroupDescriptor, StabilizerError> {
    let n = datum.cox().n();
    let u = datum.twist().compose(&stratum.rep);
    let blocks = interval_blocks(n, &stratum.levi_type);
    let mut owner = vec![0usize; n + 1];
    for (b, block) in blocks.iter().enumerate() {
        for &c in block {
            owner[c] = b;
        }
    }
    // u must send blocks onto blocks
    let mut image = vec![0usize; blocks.len()];
    for (b, block) in blocks.iter().enumerate() {
        let target: BTreeSet<usize> = block.iter().map(|&c| owner[u.apply(c)]).collect();
        if target.len() != 1 {
            return Err(StabilizerError::BrokenBlocks(format!(
                "block {block:?} is torn apart"
            )));
        }
        image[b] = *target.iter().next().unwrap();
    }
    let mut factors = Vec::new();
    for cyc in perm_cycles(&image) {
        let size = blocks[cyc[0]].len();
        if cyc.iter().any(|&b| blocks[b].len() != size) {
            return Err(StabilizerError::BrokenBlocks(
                "cycle mixes block sizes".into(),
            ));
        }
        factors.push(gl_block(size, cyc.len()));
    }
    Ok(GroupDescriptor::product(factors))
}

fn symplectic_descriptor(
    datum: &ZipDatum,
    stratum: &Stratum,
) -> Result<GroupDescriptor, StabilizerError> {
    let rank = datum.cox().n();
    let dim = 2 * rank;
    if stratum.levi_type.contains(&rank) {
        return Err(StabilizerError::Unsupported(
            "Levi type contains the long simple reflection outside the central case".into(),
        ));
    }
    let u = datum.twist().compose(&stratum.rep);
    // coordinate classes {i, 2n+1-i} indexed by 1..=rank
    let class_of = |c: usize| if c <= rank { c } else { dim + 1 - c };
    let flipped = |c: usize| u.apply(c) > rank;
    let blocks = interval_blocks(rank, &stratum.levi_type);
    let mut owner = vec![0usize; rank + 1];
    for (b, block) in blocks.iter().enumerate() {
        for &c in block {
            owner[c] = b;
        }
    }
    let mut image = vec![0usize; blocks.len()];
    let mut flips = vec![false; blocks.len()];
    for (b, block) in blocks.iter().enumerate() {
        let targets: BTreeSet<usize> = block
            .iter()
            .map(|&c| owner[class_of(u.apply(c))])
            .collect();
        if targets.len() != 1 {
            return Err(StabilizerError::BrokenBlocks(format!(
                "class block {block:?} is torn apart"
            )));
        }
        let sides: BTreeSet<bool> = block.iter().map(|&c| flipped(c)).collect();
        if sides.len() != 1 {
            return Err(StabilizerError::BrokenBlocks(format!(
                "class block {block:?} straddles the pairing"
            )));
        }
        image[b] = *targets.iter().next().unwrap();
        flips[b] = *sides.iter().next().unwrap();
    }
    let mut factors = Vec::new();
    for cyc in perm_cycles(&image) {
        let size = blocks[cyc[0]].len();
        if cyc.iter().any(|&b| blocks[b].len() != size) {
            return Err(StabilizerError::BrokenBlocks(
                "cycle mixes block sizes".into(),
            ));
        }
        let crossings = cyc.iter().filter(|&&b| flips[b]).count();
        factors.push(if crossings % 2 == 0 {
            gl_block(size, cyc.len())
        } else {
            u_block(size, cyc.len())
        });
    }
    Ok(GroupDescriptor::product(factors))
}

/// Stratum index k for a representative of the form (1 2 ... k), 1 for id.
fn leading_cycle_index(one_line: &[usize]) -> Option<usize> {
    let n = one_line.len();
    let mut k = n;
    while k > 1 && one_line[k - 1] == k {
        k -= 1;
    }
    if k == 1 && one_line[0] == 1 {
        return Some(1);
    }
    for i in 0..k - 1 {
        if one_line[i] != i + 2 {
            return None;
        }
    }
    if one_line[k - 1] != 1 {
        return None;
    }
    Some(k)
}

fn twisted_descriptor(
    datum: &ZipDatum,
    stratum: &Stratum,
) -> Result<GroupDescriptor, StabilizerError> {
    let n = datum.cox().n();
    let expected: BTreeSet<usize> = (2..n).collect();
    if *datum.parabolic_type() != expected {
        return Err(StabilizerError::Unsupported(
            "twisted family is only analyzed for the (1, n-1) signature".into(),
        ));
    }
    let k = leading_cycle_index(&stratum.rep.one_line()).ok_or_else(|| {
        StabilizerError::BrokenBlocks("stratum representative is not a leading cycle".into())
    })?;
    let (desc, levi) = gu_signature_descriptor(n, k);
    if levi != stratum.levi_type {
        return Err(StabilizerError::BrokenBlocks(format!(
            "Levi type {:?} disagrees with the signature rule {:?}",
            stratum.levi_type, levi
        )));
    }
    Ok(desc)
}

/// Closed form for the twisted (1, n-1) family at stratum (1...k):
/// the component group extension and the predicted Levi type.
///
/// The surviving middle set M consists of the coordinates missed by the
/// cycle that the twisting permutation threads through both ends; its size
/// f is the rank of the unitary quotient, and the threading direction fixes
/// whether the kernel is a full torus or a norm-one kernel.
pub fn gu_signature_descriptor(n: usize, k: usize) -> (GroupDescriptor, BTreeSet<usize>) {
    assert!(n >= 2 && (1..=n).contains(&k));
    let (f, eps_plus, m_set): (usize, bool, BTreeSet<usize>) = if 2 * k <= n + 1 {
        (n + 1 - 2 * k, false, (k + 1..=n + 1 - k).collect())
    } else {
        (2 * k - n - 2, true, (n + 2 - k..=k - 1).collect())
    };
    let kernel = if eps_plus {
        Atom::TorusRes { degree: n - f }
    } else {
        Atom::NormKernel { degree: n - f }
    };
    let quotient = if f == 0 {
        Atom::TorusRes { degree: 1 }
    } else {
        Atom::FullGroup {
            family: CoxeterFamily::TypeATwisted,
            rank: f,
        }
    };
    let levi: BTreeSet<usize> = (2..n)
        .filter(|&i| m_set.contains(&i) && m_set.contains(&(i + 1)))
        .collect();
    (GroupDescriptor::extension(kernel, quotient), levi)
}
