//! Weyl groups of types A and C as explicit permutation groups.
//!
//! Type A_{n-1} is the symmetric group S_n on {1..n} with adjacent
//! transpositions as simple reflections. Type C_n is realized inside S_{2n}
//! as the permutations commuting with the pairing i <-> 2n+1-i; its simple
//! reflections are (i i+1)(2n-i 2n-i+1) for i < n and (n n+1). A twisted
//! variant of type A carries the duality automorphism w -> w0 w w0 as its
//! Frobenius action; the split families carry the identity.
//!
//! Composition follows (ab)(i) = a(b(i)). Lengths and element tables come
//! from a breadth-first walk of the Cayley graph, memoized per descriptor;
//! for type A the inversion count is used directly and the table serves as a
//! cross-check in tests.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

/// Rank cap for type A (symmetric group S_n).
pub const MAX_RANK_A: usize = 8;
/// Rank cap for type C.
pub const MAX_RANK_C: usize = 6;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeylError {
    #[error("images {0:?} are not a permutation of 1..={1}")]
    NotAPermutation(Vec<usize>, usize),
    #[error("element acts on {0} points but the group acts on {1}")]
    DomainMismatch(usize, usize),
    #[error("permutation violates the type C pairing symmetry")]
    NotInGroup,
    #[error("rank {0} exceeds the cap {1} for this family")]
    RankTooLarge(usize, usize),
    #[error("simple reflection index {0} is out of range 1..={1}")]
    BadGeneratorIndex(usize, usize),
}

// ---- permutations ----

/// A permutation of {1..N}, stored 0-based: `images[i]` is w(i+1) - 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylElement {
    images: Vec<usize>,
}

impl WeylElement {
    pub fn identity(n: usize) -> Self {
        WeylElement {
            images: (0..n).collect(),
        }
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(images_1based: &[usize]) -> Result<Self, WeylError> {
        let n = images_1based.len();
        let mut seen = vec![false; n];
        for &v in images_1based {
            if v < 1 || v > n || seen[v - 1] {
                return Err(WeylError::NotAPermutation(images_1based.to_vec(), n));
            }
            seen[v - 1] = true;
        }
        Ok(WeylElement {
            images: images_1based.iter().map(|&v| v - 1).collect(),
        })
    }

    /// The transposition (a b) on {1..n}, 1-based.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a - 1, b - 1);
        WeylElement { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// w(i) in 1-based coordinates.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] + 1
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// (self * other)(i) = self(other(i)).
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "mixed permutation domains");
        WeylElement {
            images: other.images.iter().map(|&v| self.images[v]).collect(),
        }
    }

    pub fn inv(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        WeylElement { images }
    }

    /// self * other * self^{-1}.
    pub fn conjugated(&self, other: &Self) -> Self {
        self.compose(other).compose(&self.inv())
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Number of pairs i < j with w(i) > w(j).
    pub fn inversions(&self) -> u32 {
        let mut count = 0;
        for i in 0..self.images.len() {
            for j in i + 1..self.images.len() {
                if self.images[i] > self.images[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// All cycles including fixed points, 1-based, each starting at its
    /// smallest member, sorted by that member.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = vec![start + 1];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cyc.push(cur + 1);
                cur = self.images[cur];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle notation like "(13)(24)"; the identity prints as "id".
    pub fn cycle_string(&self) -> String {
        let nontrivial: Vec<Vec<usize>> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if nontrivial.is_empty() {
            return "id".to_string();
        }
        let mut s = String::new();
        for cyc in nontrivial {
            s.push('(');
            for (k, v) in cyc.iter().enumerate() {
                if k > 0 && cyc.iter().any(|&x| x > 9) {
                    s.push(' ');
                }
                s.push_str(&v.to_string());
            }
            s.push(')');
        }
        s
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

// ---- Coxeter descriptors ----

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CoxeterFamily {
    /// S_n, split.
    TypeA,
    /// S_n with Frobenius acting by w -> w0 w w0.
    TypeATwisted,
    /// Type C_n inside S_{2n}, split.
    TypeC,
}

struct GroupTable {
    elements: Vec<WeylElement>,
    lengths: Vec<u32>,
    index: HashMap<Vec<usize>, usize>,
}

/// A Weyl group together with its chosen simple reflections and the
/// Frobenius action on them.
pub struct CoxeterDescriptor {
    family: CoxeterFamily,
    n: usize,
    table: OnceLock<GroupTable>,
}

impl fmt::Debug for CoxeterDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(n={})", self.family, self.n)
    }
}

impl Clone for CoxeterDescriptor {
    fn clone(&self) -> Self {
        // the element table is a lazy cache; a clone rebuilds it on demand
        CoxeterDescriptor {
            family: self.family,
            n: self.n,
            table: OnceLock::new(),
        }
    }
}

impl PartialEq for CoxeterDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.family == other.family && self.n == other.n
    }
}
impl Eq for CoxeterDescriptor {}

impl CoxeterDescriptor {
    pub fn type_a(n: usize) -> Result<Self, WeylError> {
        if n < 1 || n > MAX_RANK_A {
            return Err(WeylError::RankTooLarge(n, MAX_RANK_A));
        }
        Ok(CoxeterDescriptor {
            family: CoxeterFamily::TypeA,
            n,
            table: OnceLock::new(),
        })
    }

    pub fn type_a_twisted(n: usize) -> Result<Self, WeylError> {
        let mut d = Self::type_a(n)?;
        d.family = CoxeterFamily::TypeATwisted;
        Ok(d)
    }

    pub fn type_c(n: usize) -> Result<Self, WeylError> {
        if n < 1 || n > MAX_RANK_C {
            return Err(WeylError::RankTooLarge(n, MAX_RANK_C));
        }
        Ok(CoxeterDescriptor {
            family: CoxeterFamily::TypeC,
            n,
            table: OnceLock::new(),
        })
    }

    pub fn family(&self) -> CoxeterFamily {
        self.family
    }

    /// The n parameter of the family (not the domain size).
    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the permutation domain: n for type A, 2n for type C.
    pub fn domain(&self) -> usize {
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => self.n,
            CoxeterFamily::TypeC => 2 * self.n,
        }
    }

    /// Number of simple reflections.
    pub fn rank(&self) -> usize {
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => self.n - 1,
            CoxeterFamily::TypeC => self.n,
        }
    }

    /// s_i for 1 <= i <= rank.
    pub fn simple_reflection(&self, i: usize) -> Result<WeylElement, WeylError> {
        let r = self.rank();
        if i < 1 || i > r {
            return Err(WeylError::BadGeneratorIndex(i, r));
        }
        Ok(match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => {
                WeylElement::transposition(self.n, i, i + 1)
            }
            CoxeterFamily::TypeC => {
                let m = 2 * self.n;
                if i == self.n {
                    WeylElement::transposition(m, self.n, self.n + 1)
                } else {
                    let a = WeylElement::transposition(m, i, i + 1);
                    let b = WeylElement::transposition(m, m - i, m - i + 1);
                    a.compose(&b)
                }
            }
        })
    }

    pub fn simple_reflections(&self) -> Vec<WeylElement> {
        (1..=self.rank())
            .map(|i| self.simple_reflection(i).unwrap())
            .collect()
    }

    /// Identifies an element as a simple reflection, if it is one.
    pub fn as_simple_index(&self, w: &WeylElement) -> Option<usize> {
        (1..=self.rank()).find(|&i| self.simple_reflection(i).unwrap() == *w)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement::identity(self.domain())
    }

    /// Membership check: correct domain, and the pairing symmetry for type C.
    pub fn contains(&self, w: &WeylElement) -> bool {
        if w.degree() != self.domain() {
            return false;
        }
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => true,
            CoxeterFamily::TypeC => {
                let m = 2 * self.n;
                (1..=m).all(|i| w.apply(i) + w.apply(m + 1 - i) == m + 1)
            }
        }
    }

    fn table(&self) -> &GroupTable {
        self.table.get_or_init(|| {
            let gens = self.simple_reflections();
            let id = self.identity();
            let mut index = HashMap::new();
            let mut elements = vec![id.clone()];
            let mut lengths = vec![0u32];
            index.insert(id.images.clone(), 0);
            let mut queue = VecDeque::from([0usize]);
            while let Some(at) = queue.pop_front() {
                let w = elements[at].clone();
                let lw = lengths[at];
                for s in &gens {
                    let next = w.compose(s);
                    if !index.contains_key(&next.images) {
                        index.insert(next.images.clone(), elements.len());
                        elements.push(next);
                        lengths.push(lw + 1);
                        queue.push_back(elements.len() - 1);
                    }
                }
            }
            // deterministic order: by (length, one-line), then rebuild the index
            let mut order: Vec<usize> = (0..elements.len()).collect();
            order.sort_by_key(|&i| (lengths[i], elements[i].images.clone()));
            let elements: Vec<WeylElement> = order.iter().map(|&i| elements[i].clone()).collect();
            let lengths: Vec<u32> = order.iter().map(|&i| lengths[i]).collect();
            let index = elements
                .iter()
                .enumerate()
                .map(|(i, w)| (w.images.clone(), i))
                .collect();
            GroupTable {
                elements,
                lengths,
                index,
            }
        })
    }

    pub fn group_order(&self) -> usize {
        self.table().elements.len()
    }

    /// All elements sorted by (length, one-line notation).
    pub fn all_elements(&self) -> &[WeylElement] {
        &self.table().elements
    }

    /// Coxeter length. For type A this is the inversion count; for type C it
    /// is the Cayley graph distance from the identity.
    pub fn length(&self, w: &WeylElement) -> Result<u32, WeylError> {
        if !self.contains(w) {
            return if w.degree() != self.domain() {
                Err(WeylError::DomainMismatch(w.degree(), self.domain()))
            } else {
                Err(WeylError::NotInGroup)
            };
        }
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeATwisted => Ok(w.inversions()),
            CoxeterFamily::TypeC => {
                let t = self.table();
                Ok(t.lengths[t.index[&w.images]])
            }
        }
    }

    /// The longest element: full reversal of the domain in both families.
    pub fn longest_element(&self) -> WeylElement {
        let m = self.domain();
        WeylElement {
            images: (0..m).rev().collect(),
        }
    }

    /// The longest element of the standard parabolic subgroup generated by
    /// the simple reflections with indices in `sub`.
    pub fn longest_element_of(&self, sub: &BTreeSet<usize>) -> Result<WeylElement, WeylError> {
        let gens: Vec<WeylElement> = sub
            .iter()
            .map(|&i| self.simple_reflection(i))
            .collect::<Result<_, _>>()?;
        let id = self.identity();
        let mut dist = HashMap::new();
        dist.insert(id.images.clone(), 0u32);
        let mut queue = VecDeque::from([id]);
        let mut best = (0u32, self.identity());
        while let Some(w) = queue.pop_front() {
            let d = dist[&w.images];
            if d > best.0 || (d == best.0 && w.images < best.1.images) {
                best = (d, w.clone());
            }
            for s in &gens {
                let next = w.compose(s);
                if !dist.contains_key(&next.images) {
                    dist.insert(next.images.clone(), d + 1);
                    queue.push_back(next);
                }
            }
        }
        Ok(best.1)
    }

    /// All elements of the standard parabolic subgroup generated by `sub`.
    pub fn parabolic_elements(&self, sub: &BTreeSet<usize>) -> Result<Vec<WeylElement>, WeylError> {
        let gens: Vec<WeylElement> = sub
            .iter()
            .map(|&i| self.simple_reflection(i))
            .collect::<Result<_, _>>()?;
        let id = self.identity();
        let mut seen = BTreeSet::new();
        seen.insert(id.images.clone());
        let mut queue = VecDeque::from([id.clone()]);
        let mut out = vec![id];
        while let Some(w) = queue.pop_front() {
            for s in &gens {
                let next = w.compose(s);
                if seen.insert(next.images.clone()) {
                    out.push(next.clone());
                    queue.push_back(next);
                }
            }
        }
        Ok(out)
    }

    /// Minimal-length representatives of the cosets W_I \ W: the elements w
    /// with l(s w) > l(w) for every s in I, sorted by (length, one-line).
    pub fn min_coset_reps(&self, sub: &BTreeSet<usize>) -> Result<Vec<WeylElement>, WeylError> {
        let gens: Vec<WeylElement> = sub
            .iter()
            .map(|&i| self.simple_reflection(i))
            .collect::<Result<_, _>>()?;
        let mut out = Vec::new();
        for w in self.all_elements() {
            let lw = self.length(w)?;
            if gens
                .iter()
                .all(|s| self.length(&s.compose(w)).unwrap() > lw)
            {
                out.push(w.clone());
            }
        }
        Ok(out)
    }

    /// Bruhat order via the prefix-sort criterion on the underlying
    /// permutation. For type C this is the restriction of the S_{2n} order,
    /// which agrees with the intrinsic order under our embedding.
    pub fn bruhat_leq(&self, u: &WeylElement, v: &WeylElement) -> bool {
        assert_eq!(u.degree(), v.degree(), "mixed permutation domains");
        let n = u.degree();
        let mut pu: Vec<usize> = Vec::with_capacity(n);
        let mut pv: Vec<usize> = Vec::with_capacity(n);
        for i in 0..n {
            pu.push(u.images[i]);
            pv.push(v.images[i]);
            let mut su = pu.clone();
            let mut sv = pv.clone();
            su.sort_unstable();
            sv.sort_unstable();
            if su.iter().zip(&sv).any(|(a, b)| a > b) {
                return false;
            }
        }
        true
    }

    /// The Frobenius action on the group: identity for the split families,
    /// w -> w0 w w0 for the twisted one.
    pub fn frobenius(&self, w: &WeylElement) -> WeylElement {
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeC => w.clone(),
            CoxeterFamily::TypeATwisted => {
                let w0 = self.longest_element();
                w0.compose(w).compose(&w0)
            }
        }
    }

    /// The Frobenius action on simple reflection indices.
    pub fn frobenius_simple_index(&self, i: usize) -> usize {
        match self.family {
            CoxeterFamily::TypeA | CoxeterFamily::TypeC => i,
            CoxeterFamily::TypeATwisted => self.n - i,
        }
    }

    /// Smallest i with l(s_i w) < l(w), if any.
    pub fn left_descent(&self, w: &WeylElement) -> Option<usize> {
        let lw = self.length(w).ok()?;
        (1..=self.rank()).find(|&i| {
            let s = self.simple_reflection(i).unwrap();
            self.length(&s.compose(w)).unwrap() < lw
        })
    }

    /// The canonical reduced word: repeatedly strip the smallest left
    /// descent. Multiplying s_{i1} * s_{i2} * ... recovers w.
    pub fn canonical_word(&self, w: &WeylElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        while let Some(i) = self.left_descent(&cur) {
            word.push(i);
            cur = self.simple_reflection(i).unwrap().compose(&cur);
        }
        debug_assert!(cur.is_identity());
        word
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn composition_applies_right_factor_first() {
        let a = WeylElement::transposition(3, 1, 2);
        let b = WeylElement::transposition(3, 2, 3);
        // (ab)(1) = a(b(1)) = a(1) = 2
        assert_eq!(a.compose(&b).apply(1), 2);
        assert_eq!(a.compose(&b).cycle_string(), "(123)");
        assert_eq!(b.compose(&a).cycle_string(), "(132)");
    }

    #[test]
    fn cycle_strings() {
        let w = WeylElement::from_one_line(&[3, 4, 1, 2]).unwrap();
        assert_eq!(w.cycle_string(), "(13)(24)");
        assert_eq!(WeylElement::identity(4).cycle_string(), "id");
        let c = WeylElement::from_one_line(&[3, 1, 4, 2]).unwrap();
        assert_eq!(c.cycle_string(), "(1342)");
    }

    #[test]
    fn type_a_lengths_match_cayley_distance() {
        for n in 2..=5 {
            let d = CoxeterDescriptor::type_a(n).unwrap();
            let t_lengths: Vec<u32> = d
                .all_elements()
                .iter()
                .map(|w| d.table().lengths[d.table().index[&w.images]])
                .collect();
            for (w, &tl) in d.all_elements().iter().zip(&t_lengths) {
                assert_eq!(w.inversions(), tl, "{w:?}");
            }
        }
    }

    #[test]
    fn group_orders() {
        assert_eq!(CoxeterDescriptor::type_a(4).unwrap().group_order(), 24);
        assert_eq!(CoxeterDescriptor::type_a(5).unwrap().group_order(), 120);
        assert_eq!(CoxeterDescriptor::type_c(2).unwrap().group_order(), 8);
        assert_eq!(CoxeterDescriptor::type_c(3).unwrap().group_order(), 48);
        assert_eq!(CoxeterDescriptor::type_c(4).unwrap().group_order(), 384);
    }

    #[test]
    fn type_c_elements_satisfy_the_pairing() {
        let d = CoxeterDescriptor::type_c(3).unwrap();
        for w in d.all_elements() {
            assert!(d.contains(w));
        }
        for w in d.all_elements().iter().step_by(5) {
            for v in d.all_elements().iter().step_by(7) {
                assert!(d.contains(&w.compose(v)));
            }
            assert!(d.contains(&w.inv()));
        }
        let outsider = WeylElement::transposition(6, 1, 2);
        assert!(!d.contains(&outsider));
        assert!(d.length(&outsider).is_err());
    }

    #[test]
    fn longest_elements() {
        let a = CoxeterDescriptor::type_a(4).unwrap();
        assert_eq!(a.longest_element().one_line(), vec![4, 3, 2, 1]);
        assert_eq!(a.length(&a.longest_element()).unwrap(), 6);
        let c = CoxeterDescriptor::type_c(2).unwrap();
        assert_eq!(c.length(&c.longest_element()).unwrap(), 4);
        let c3 = CoxeterDescriptor::type_c(3).unwrap();
        assert_eq!(c3.length(&c3.longest_element()).unwrap(), 9);
        // the closed form agrees with the BFS maximum over the full group
        let full: BTreeSet<usize> = (1..=c3.rank()).collect();
        assert_eq!(c3.longest_element_of(&full).unwrap(), c3.longest_element());
        let fa: BTreeSet<usize> = (1..=a.rank()).collect();
        assert_eq!(a.longest_element_of(&fa).unwrap(), a.longest_element());
    }

    #[test]
    fn parabolic_longest_elements() {
        let d = CoxeterDescriptor::type_a(4).unwrap();
        // W_{1,3} = {id, (12), (34), (12)(34)}
        let w = d.longest_element_of(&set(&[1, 3])).unwrap();
        assert_eq!(w.cycle_string(), "(12)(34)");
        let w = d.longest_element_of(&set(&[2, 3])).unwrap();
        assert_eq!(w.one_line(), vec![1, 4, 3, 2]);
        assert_eq!(d.parabolic_elements(&set(&[1, 3])).unwrap().len(), 4);
        assert_eq!(d.parabolic_elements(&set(&[2, 3])).unwrap().len(), 6);
    }

    #[test]
    fn coset_reps_for_the_two_block_cocharacter() {
        let d = CoxeterDescriptor::type_a(4).unwrap();
        let reps = d.min_coset_reps(&set(&[1, 3])).unwrap();
        let strs: Vec<String> = reps.iter().map(|w| w.cycle_string()).collect();
        assert_eq!(strs, ["id", "(23)", "(234)", "(132)", "(1342)", "(13)(24)"]);
        let lens: Vec<u32> = reps.iter().map(|w| d.length(w).unwrap()).collect();
        assert_eq!(lens, [0, 1, 2, 2, 3, 4]);
    }

    #[test]
    fn coset_reps_for_the_one_block_cocharacter() {
        let d = CoxeterDescriptor::type_a(5).unwrap();
        let i: BTreeSet<usize> = set(&[2, 3, 4]);
        let reps = d.min_coset_reps(&i).unwrap();
        let strs: Vec<String> = reps.iter().map(|w| w.cycle_string()).collect();
        assert_eq!(strs, ["id", "(12)", "(123)", "(1234)", "(12345)"]);
    }

    #[test]
    fn coset_reps_for_type_c() {
        let d = CoxeterDescriptor::type_c(2).unwrap();
        let reps = d.min_coset_reps(&set(&[1])).unwrap();
        let strs: Vec<String> = reps.iter().map(|w| w.cycle_string()).collect();
        assert_eq!(strs, ["id", "(23)", "(1342)", "(13)(24)"]);
        let d3 = CoxeterDescriptor::type_c(3).unwrap();
        assert_eq!(d3.min_coset_reps(&set(&[1, 2])).unwrap().len(), 8);
    }

    #[test]
    fn coset_count_times_parabolic_order_is_group_order() {
        let d = CoxeterDescriptor::type_a(5).unwrap();
        for sub in [set(&[]), set(&[1]), set(&[1, 3]), set(&[2, 3]), set(&[1, 2, 4])] {
            let reps = d.min_coset_reps(&sub).unwrap().len();
            let para = d.parabolic_elements(&sub).unwrap().len();
            assert_eq!(reps * para, d.group_order(), "{sub:?}");
        }
        let c = CoxeterDescriptor::type_c(3).unwrap();
        for sub in [set(&[]), set(&[1, 2]), set(&[2, 3]), set(&[1, 3])] {
            let reps = c.min_coset_reps(&sub).unwrap().len();
            let para = c.parabolic_elements(&sub).unwrap().len();
            assert_eq!(reps * para, c.group_order(), "{sub:?}");
        }
    }

    /// Independent check of the Bruhat implementation: u <= v exactly when u
    /// is a product of some subword of a fixed reduced word of v.
    fn subword_closure(d: &CoxeterDescriptor, v: &WeylElement) -> BTreeSet<Vec<usize>> {
        let word = d.canonical_word(v);
        let mut out = BTreeSet::new();
        for mask in 0u32..(1 << word.len()) {
            let mut prod = d.identity();
            for (k, &i) in word.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    prod = prod.compose(&d.simple_reflection(i).unwrap());
                }
            }
            out.insert(prod.images.clone());
        }
        out
    }

    #[test]
    fn bruhat_agrees_with_the_subword_oracle() {
        for d in [
            CoxeterDescriptor::type_a(3).unwrap(),
            CoxeterDescriptor::type_a(4).unwrap(),
            CoxeterDescriptor::type_c(2).unwrap(),
            CoxeterDescriptor::type_c(3).unwrap(),
        ] {
            for v in d.all_elements() {
                let below = subword_closure(&d, v);
                for u in d.all_elements() {
                    assert_eq!(
                        d.bruhat_leq(u, v),
                        below.contains(&u.images),
                        "{u:?} vs {v:?} in {d:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn twisted_frobenius_swaps_simple_reflections() {
        let d = CoxeterDescriptor::type_a_twisted(4).unwrap();
        let s1 = d.simple_reflection(1).unwrap();
        assert_eq!(d.frobenius(&s1), d.simple_reflection(3).unwrap());
        assert_eq!(d.frobenius_simple_index(1), 3);
        assert_eq!(d.frobenius_simple_index(2), 2);
        for w in d.all_elements().iter().step_by(3) {
            assert_eq!(d.frobenius(&d.frobenius(w)), *w);
        }
        let split = CoxeterDescriptor::type_a(4).unwrap();
        let w = WeylElement::from_one_line(&[2, 1, 3, 4]).unwrap();
        assert_eq!(split.frobenius(&w), w);
    }

    #[test]
    fn canonical_words_are_reduced_and_rebuild() {
        for d in [
            CoxeterDescriptor::type_a(4).unwrap(),
            CoxeterDescriptor::type_c(2).unwrap(),
            CoxeterDescriptor::type_c(3).unwrap(),
        ] {
            for w in d.all_elements() {
                let word = d.canonical_word(w);
                assert_eq!(word.len() as u32, d.length(w).unwrap());
                let mut prod = d.identity();
                for &i in &word {
                    prod = prod.compose(&d.simple_reflection(i).unwrap());
                }
                assert_eq!(prod, *w);
            }
        }
    }

    #[test]
    fn rank_caps_are_enforced() {
        assert!(CoxeterDescriptor::type_a(9).is_err());
        assert!(CoxeterDescriptor::type_c(7).is_err());
        assert!(CoxeterDescriptor::type_a(8).is_ok());
        assert!(CoxeterDescriptor::type_c(6).is_ok());
    }
}
