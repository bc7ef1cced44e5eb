//! Cayley-table representation of small finite groups.
//!
//! Elements are indices `0..n` with the identity fixed at index 0.
//! Every table is validated at construction: rows and columns must be
//! permutations, index 0 must be a two-sided identity and every element
//! must have an inverse. Associativity is checked exhaustively up to
//! [`ASSOCIATIVITY_CHECK_BOUND`]; above that the group carries a flag
//! recording that the O(n³) sweep was skipped.

use crate::{Error, Result};

/// Orders up to which `a(bc) = (ab)c` is verified exhaustively at construction.
pub const ASSOCIATIVITY_CHECK_BOUND: usize = 32;

/// Largest group order for which [`automorphisms`] will brute-force.
pub const AUTOMORPHISM_BOUND: usize = 12;

/// A finite group of order `n` given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    elem_order: Vec<usize>,
    labels: Vec<String>,
    associativity_checked: bool,
}

impl FiniteGroup {
    /// Builds a group from a raw multiplication table, validating all
    /// structural invariants.
    pub fn from_table(name: impl Into<String>, labels: Vec<String>, mul: Vec<Vec<usize>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        assert_eq!(labels.len(), n, "one label per element");

        // Latin square: each row and column is a permutation of 0..n.
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotLatin(format!("row {i} has length {}", row.len())));
            }
            let mut seen = vec![false; n];
            for &v in row {
                if v >= n || seen[v] {
                    return Err(Error::NotLatin(format!("row {i} repeats or overflows at value {v}")));
                }
                seen[v] = true;
            }
        }
        for j in 0..n {
            let mut seen = vec![false; n];
            for (i, row) in mul.iter().enumerate() {
                let v = row[j];
                if seen[v] {
                    return Err(Error::NotLatin(format!("column {j} repeats value {v} at row {i}")));
                }
                seen[v] = true;
            }
        }

        // Two-sided identity at index 0.
        for i in 0..n {
            if mul[0][i] != i || mul[i][0] != i {
                return Err(Error::BadIdentity);
            }
        }

        let associativity_checked = n <= ASSOCIATIVITY_CHECK_BOUND;
        if associativity_checked {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        if mul[mul[a][b]][c] != mul[a][mul[b][c]] {
                            return Err(Error::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        }

        let mut inv = vec![usize::MAX; n];
        for i in 0..n {
            match (0..n).find(|&j| mul[i][j] == 0 && mul[j][i] == 0) {
                Some(j) => inv[i] = j,
                None => return Err(Error::NoInverse(i)),
            }
        }

        let mut elem_order = vec![0; n];
        for i in 0..n {
            let mut k = 1;
            let mut acc = i;
            while acc != 0 {
                acc = mul[acc][i];
                k += 1;
            }
            elem_order[i] = k;
        }

        Ok(FiniteGroup { name: name.into(), mul, inv, elem_order, labels, associativity_checked })
    }

    /// The cyclic group ℤ_n, element `i` at index `i`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyGroup);
        }
        let mul = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_table(format!("Z{n}"), labels, mul)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    /// Iterator over element indices, identity first.
    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn identity(&self) -> usize {
        0
    }

    /// Product of elements `i` and `j`.
    ///
    /// Panics if either index is out of range.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    /// Inverse of element `i`. Panics if `i` is out of range.
    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    /// Least `k ≥ 1` with `gᵢᵏ = e`. Panics if `i` is out of range.
    pub fn element_order(&self, i: usize) -> usize {
        self.elem_order[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// False when the order exceeded [`ASSOCIATIVITY_CHECK_BOUND`] and the
    /// exhaustive associativity sweep was skipped.
    pub fn associativity_checked(&self) -> bool {
        self.associativity_checked
    }
}

/// Direct product `G × H`; the pair `(u, v)` sits at index `u·|H| + v`.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
    let (a, b) = (g.order(), h.order());
    let n = a * b;
    let mut mul = vec![vec![0usize; n]; n];
    for i in 0..n {
        let (u1, v1) = (i / b, i % b);
        for j in 0..n {
            let (u2, v2) = (j / b, j % b);
            mul[i][j] = g.mul(u1, u2) * b + h.mul(v1, v2);
        }
    }
    let labels = (0..n)
        .map(|i| format!("({},{})", g.label(i / b), h.label(i % b)))
        .collect();
    FiniteGroup::from_table(format!("{}x{}", g.name(), h.name()), labels, mul)
        .expect("product of valid groups is a valid group")
}

/// A map on element indices. Bijectivity is a checked property, never an
/// assumption; candidate orthomorphisms and automorphisms pass through
/// this type before validation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupMap {
    images: Vec<usize>,
}

impl GroupMap {
    pub fn new(images: Vec<usize>) -> Self {
        GroupMap { images }
    }

    pub fn identity(n: usize) -> Self {
        GroupMap { images: (0..n).collect() }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// True when the image array is a permutation of `0..len`.
    pub fn is_permutation(&self) -> bool {
        let n = self.images.len();
        let mut seen = vec![false; n];
        self.images.iter().all(|&v| {
            if v >= n || seen[v] {
                false
            } else {
                seen[v] = true;
                true
            }
        })
    }

    /// Inverse permutation, or `None` when not a bijection.
    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_permutation() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v] = i;
        }
        Some(GroupMap::new(inv))
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap::new(other.images.iter().map(|&v| self.images[v]).collect())
    }
}

/// True when `f` is a bijection with `f(e) = e` and `f(ab) = f(a)f(b)`.
pub fn is_automorphism(group: &FiniteGroup, f: &GroupMap) -> bool {
    let n = group.order();
    if f.len() != n || !f.is_permutation() || f.apply(0) != 0 {
        return false;
    }
    for a in 0..n {
        for b in 0..n {
            if f.apply(group.mul(a, b)) != group.mul(f.apply(a), f.apply(b)) {
                return false;
            }
        }
    }
    true
}

/// All automorphisms of `group`, in lexicographic order of image arrays.
///
/// Brute-forces over bijections fixing the identity, pruning candidates
/// whose image would change an element's order; errors when the order
/// exceeds [`AUTOMORPHISM_BOUND`].
pub fn automorphisms(group: &FiniteGroup) -> Result<Vec<GroupMap>> {
    let n = group.order();
    if n > AUTOMORPHISM_BOUND {
        return Err(Error::BoundExceeded { order: n, bound: AUTOMORPHISM_BOUND });
    }
    let mut images = vec![0usize; n];
    let mut used = vec![false; n];
    used[0] = true;
    let mut out = Vec::new();
    search_automorphisms(group, 1, &mut images, &mut used, &mut out);
    Ok(out)
}

fn search_automorphisms(
    group: &FiniteGroup,
    depth: usize,
    images: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<GroupMap>,
) {
    let n = group.order();
    if depth == n {
        let candidate = GroupMap::new(images.clone());
        if is_automorphism(group, &candidate) {
            out.push(candidate);
        }
        return;
    }
    for j in 1..n {
        if used[j] || group.element_order(j) != group.element_order(depth) {
            continue;
        }
        images[depth] = j;
        used[j] = true;
        search_automorphisms(group, depth + 1, images, used, out);
        used[j] = false;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn cyclic_trivial_group() {
        let g = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.mul(0, 0), 0);
        assert_eq!(g.inv(0), 0);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn cyclic_orders_and_inverses() {
        let z4 = FiniteGroup::cyclic(4).unwrap();
        assert_eq!(
            (0..4).map(|i| z4.element_order(i)).collect::<Vec<_>>(),
            vec![1, 4, 2, 4]
        );
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert_eq!((0..3).map(|i| z3.inv(i)).collect::<Vec<_>>(), vec![0, 2, 1]);
    }

    #[test]
    fn cyclic_zero_rejected() {
        assert!(matches!(FiniteGroup::cyclic(0), Err(Error::EmptyGroup)));
    }

    #[test]
    fn z2z4_order_profile() {
        let g = direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        assert_eq!(g.order(), 8);
        assert_eq!(g.name(), "Z2xZ4");
        let twos = (0..8).filter(|&i| g.element_order(i) == 2).count();
        let fours = (0..8).filter(|&i| g.element_order(i) == 4).count();
        assert_eq!((twos, fours), (3, 4));
        assert_eq!(g.label(6), "(1,2)");
    }

    #[test]
    fn product_with_trivial_factor_matches_other_factor() {
        let z1 = FiniteGroup::cyclic(1).unwrap();
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let p = direct_product(&z1, &z3);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(p.mul(i, j), z3.mul(i, j));
            }
        }
    }

    #[test]
    fn klein_is_exponent_two() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let klein = direct_product(&z2, &z2);
        assert_eq!(
            (0..4).map(|i| klein.element_order(i)).collect::<Vec<_>>(),
            vec![1, 2, 2, 2]
        );
    }

    #[test]
    fn element_order_examples_in_z2z4() {
        let g = direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        assert_eq!(g.element_order(0), 1); // (0,0)
        assert_eq!(g.element_order(1), 4); // (0,1)
        assert_eq!(g.element_order(6), 2); // (1,2)
    }

    #[test]
    #[should_panic]
    fn element_order_out_of_range_panics() {
        let g = FiniteGroup::cyclic(3).unwrap();
        g.element_order(3);
    }

    #[test]
    fn bad_tables_rejected() {
        // constant row
        let t = vec![vec![0, 1], vec![1, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", vec!["e".into(), "a".into()], t),
            Err(Error::NotLatin(_))
        ));
        // Latin but identity not at 0
        let t = vec![vec![1, 0], vec![0, 1]];
        assert!(matches!(
            FiniteGroup::from_table("bad", vec!["e".into(), "a".into()], t),
            Err(Error::BadIdentity)
        ));
        // Latin with identity at 0, but (1*2)*2 = 4 while 1*(2*2) = 1.
        let t = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let labels = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(
            FiniteGroup::from_table("bad", labels, t),
            Err(Error::NotAssociative(..))
        ));
    }

    #[test]
    fn automorphism_counts() {
        let trivial = FiniteGroup::cyclic(1).unwrap();
        assert_eq!(automorphisms(&trivial).unwrap().len(), 1);

        // Frozen from the brute-force oracle below: |Aut(Z3)| = 2.
        let z3 = FiniteGroup::cyclic(3).unwrap();
        let auts = automorphisms(&z3).unwrap();
        assert_eq!(auts.len(), 2);
        assert_eq!(auts.len(), oracle_automorphism_count(&z3));

        // Frozen from the oracle: |Aut(Z2xZ4)| = 8.
        let g = direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap());
        let auts = automorphisms(&g).unwrap();
        assert_eq!(auts.len(), 8);
        assert_eq!(auts.len(), oracle_automorphism_count(&g));
    }

    /// Test-only oracle: full enumeration of bijections fixing identity,
    /// with the homomorphism law checked over all pairs. Independent of
    /// the pruned search in `automorphisms`.
    fn oracle_automorphism_count(group: &FiniteGroup) -> usize {
        let n = group.order();
        (1..n)
            .permutations(n - 1)
            .filter(|p| {
                let f: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
                (0..n).all(|a| (0..n).all(|b| f[group.mul(a, b)] == group.mul(f[a], f[b])))
            })
            .count()
    }

    #[test]
    fn automorphisms_sorted_and_closed() {
        for g in [
            FiniteGroup::cyclic(6).unwrap(),
            direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(4).unwrap()),
            direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap()),
        ] {
            let auts = automorphisms(&g).unwrap();
            assert!(auts.windows(2).all(|w| w[0] < w[1]), "sorted, duplicate-free");
            for f in &auts {
                assert!(auts.contains(&f.inverse().unwrap()));
                for h in &auts {
                    assert!(auts.contains(&f.compose(h)));
                }
                for i in 0..g.order() {
                    assert_eq!(g.element_order(f.apply(i)), g.element_order(i));
                }
            }
        }
    }

    #[test]
    fn automorphism_bound_enforced() {
        let g = FiniteGroup::cyclic(13).unwrap();
        assert!(matches!(automorphisms(&g), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn associativity_skip_above_bound() {
        let g = FiniteGroup::cyclic(33).unwrap();
        assert!(!g.associativity_checked());
        assert!(FiniteGroup::cyclic(32).unwrap().associativity_checked());
    }

    #[test]
    fn group_map_inverse_and_compose() {
        let f = GroupMap::new(vec![0, 2, 3, 1]);
        let finv = f.inverse().unwrap();
        assert_eq!(f.compose(&finv), GroupMap::identity(4));
        assert_eq!(finv.compose(&f), GroupMap::identity(4));
        assert!(!GroupMap::new(vec![0, 0, 1]).is_permutation());
        assert!(GroupMap::new(vec![0, 0, 1]).inverse().is_none());
    }
}
