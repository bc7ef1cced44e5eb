//! Normalised orthomorphisms: validation, exhaustive enumeration, the
//! order partition A_ij and the literal evaluation of the bijection /
//! orthomorphism set equalities (statements LEM1-*).

use std::sync::Arc;

use crate::group::{FiniteGroup, GroupMap};
use crate::{Error, Result};

/// Default bound on the group order for exhaustive enumeration.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// A normalised orthomorphism: a permutation `θ` fixing the identity
/// whose complete mapping `x ↦ x⁻¹θ(x)` is also a permutation.
#[derive(Debug, Clone)]
pub struct Orthomorphism {
    group: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl PartialEq for Orthomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.images == other.images
            && (Arc::ptr_eq(&self.group, &other.group) || *self.group == *other.group)
    }
}

impl Eq for Orthomorphism {}

impl std::hash::Hash for Orthomorphism {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.images.hash(state);
    }
}

impl Orthomorphism {
    /// Validates `images` and wraps it; the error names the first
    /// violated requirement.
    pub fn new(group: Arc<FiniteGroup>, images: Vec<usize>) -> Result<Self> {
        validate_orthomorphism(&group, &images)?;
        Ok(Orthomorphism { group, images })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn as_map(&self) -> GroupMap {
        GroupMap::new(self.images.clone())
    }

    /// The associated complete mapping `x ↦ x⁻¹θ(x)`.
    pub fn complete_mapping(&self) -> GroupMap {
        complete_mapping(&self.group, &self.as_map())
    }

    /// Cycle notation over the group's element labels.
    pub fn cycle_notation(&self) -> String {
        cycle_notation(&self.images, &self.group)
    }
}

/// Explains why `images` fails to be a normalised orthomorphism, or `Ok(())`.
pub fn validate_orthomorphism(group: &FiniteGroup, images: &[usize]) -> Result<()> {
    let n = group.order();
    if images.len() != n {
        return Err(Error::NotOrthomorphism(format!(
            "image array has length {}, group has order {n}",
            images.len()
        )));
    }
    if let Some(&v) = images.iter().find(|&&v| v >= n) {
        return Err(Error::NotOrthomorphism(format!("image {v} out of range")));
    }
    if !GroupMap::new(images.to_vec()).is_permutation() {
        return Err(Error::NotOrthomorphism("images are not a bijection".into()));
    }
    if images[0] != 0 {
        return Err(Error::NotOrthomorphism("identity is not fixed".into()));
    }
    let phi = complete_mapping(group, &GroupMap::new(images.to_vec()));
    if !phi.is_permutation() {
        return Err(Error::NotOrthomorphism("complete mapping is not a bijection".into()));
    }
    // Follows from the above, asserted independently: no fixed point
    // other than the identity.
    if let Some(i) = (1..n).find(|&i| images[i] == i) {
        return Err(Error::NotOrthomorphism(format!("non-identity fixed point at {i}")));
    }
    Ok(())
}

/// The complete mapping `φ(x) = x⁻¹·m(x)` of an arbitrary candidate map.
///
/// No bijectivity is required of input or output. Panics when `m` has
/// out-of-range entries.
pub fn complete_mapping(group: &FiniteGroup, m: &GroupMap) -> GroupMap {
    let images = (0..m.len()).map(|i| group.mul(group.inv(i), m.apply(i))).collect();
    GroupMap::new(images)
}

/// True iff `m` is a bijection fixing the identity whose complete
/// mapping is a bijection. Malformed image arrays yield `false`; the
/// diagnostic is available from [`validate_orthomorphism`].
pub fn is_orthomorphism(group: &FiniteGroup, m: &GroupMap) -> bool {
    validate_orthomorphism(group, m.images()).is_ok()
}

/// Every normalised orthomorphism of `group`, lexicographically ordered
/// by image array.
///
/// Depth-first assignment of `θ(gᵢ)` in index order, keeping bitsets of
/// used images and used complete-mapping values and pruning on the
/// first collision. Errors when the order exceeds `max_order`.
pub fn enumerate_orthomorphisms(
    group: &Arc<FiniteGroup>,
    max_order: usize,
) -> Result<Vec<Orthomorphism>> {
    let n = group.order();
    if n > max_order {
        return Err(Error::BoundExceeded { order: n, bound: max_order });
    }
    debug_assert!(n <= 64, "bitset pruning assumes order <= 64");
    let mut images = vec![0usize; n];
    let mut out = Vec::new();
    // Bit i set = value i already used; the identity's images are fixed.
    let mut used_theta: u64 = 1;
    let mut used_phi: u64 = 1;
    search(group, 1, &mut images, &mut used_theta, &mut used_phi, &mut out);
    Ok(out)
}

fn search(
    group: &Arc<FiniteGroup>,
    depth: usize,
    images: &mut Vec<usize>,
    used_theta: &mut u64,
    used_phi: &mut u64,
    out: &mut Vec<Orthomorphism>,
) {
    let n = group.order();
    if depth == n {
        out.push(Orthomorphism { group: Arc::clone(group), images: images.clone() });
        return;
    }
    let inv_d = group.inv(depth);
    for j in 1..n {
        if *used_theta & (1 << j) != 0 {
            continue;
        }
        let phi = group.mul(inv_d, j);
        if *used_phi & (1 << phi) != 0 {
            continue;
        }
        images[depth] = j;
        *used_theta |= 1 << j;
        *used_phi |= 1 << phi;
        search(group, depth + 1, images, used_theta, used_phi, out);
        *used_theta &= !(1 << j);
        *used_phi &= !(1 << phi);
    }
}

/// The four A_ij sets of an exponent-4 group: non-identity `x` bucketed
/// by `(o(x), o(θ(x)))`, first subscript the order of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderPartition {
    pub a44: Vec<usize>,
    pub a42: Vec<usize>,
    pub a24: Vec<usize>,
    pub a22: Vec<usize>,
}

impl OrderPartition {
    pub fn sizes(&self) -> (usize, usize, usize, usize) {
        (self.a44.len(), self.a42.len(), self.a24.len(), self.a22.len())
    }
}

/// Buckets the non-identity elements of `theta`'s group by element order.
///
/// Errors when some element order lies outside {1, 2, 4}.
pub fn order_partition(theta: &Orthomorphism) -> Result<OrderPartition> {
    let group = theta.group();
    let n = group.order();
    let mut p = OrderPartition { a44: vec![], a42: vec![], a24: vec![], a22: vec![] };
    for i in 1..n {
        let (ox, oy) = (group.element_order(i), group.element_order(theta.apply(i)));
        let bucket = match (ox, oy) {
            (4, 4) => &mut p.a44,
            (4, 2) => &mut p.a42,
            (2, 4) => &mut p.a24,
            (2, 2) => &mut p.a22,
            _ => {
                let bad = if ox != 2 && ox != 4 { ox } else { oy };
                return Err(Error::UnsupportedOrder(bad));
            }
        };
        bucket.push(i);
    }
    Ok(p)
}

/// Verdicts of the two literal set-equality conditions: `bijection`
/// holds iff condition (1) does, `orthomorphism` iff (1) and (2) both do.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lemma1Check {
    pub bijection: bool,
    pub orthomorphism: bool,
}

/// Evaluates the order-partition characterisation of "bijection fixing
/// the identity" and "orthomorphism" as literal disjoint-union set
/// equalities over the A_ij buckets of an arbitrary candidate map.
///
/// Panics when the group has an element of order outside {1, 2, 4} or
/// when `m` has out-of-range entries.
pub fn check_lemma1(group: &FiniteGroup, m: &GroupMap) -> Lemma1Check {
    let n = group.order();
    assert!(n <= 64, "bitmask evaluation assumes order <= 64");
    assert_eq!(m.len(), n, "map length must equal group order");
    let ord = |i: usize| group.element_order(i);
    for i in 0..n {
        assert!(m.apply(i) < n, "image out of range");
        assert!(
            matches!(ord(i), 1 | 2 | 4),
            "order partition undefined for element order {}",
            ord(i)
        );
    }

    let ord4: u64 = (0..n).filter(|&i| ord(i) == 4).map(|i| 1 << i).sum();
    let ord2: u64 = (0..n).filter(|&i| ord(i) == 2).map(|i| 1 << i).sum();

    // A_ij buckets of the candidate map; x with m(x) = e lands nowhere.
    let mut buckets: [Vec<usize>; 4] = Default::default(); // a44 a42 a24 a22
    for i in 1..n {
        match (ord(i), ord(m.apply(i))) {
            (4, 4) => buckets[0].push(i),
            (4, 2) => buckets[1].push(i),
            (2, 4) => buckets[2].push(i),
            (2, 2) => buckets[3].push(i),
            _ => {}
        }
    }
    let [a44, a42, a24, a22] = &buckets;

    let theta = |i: &usize| m.apply(*i);
    let phi = |i: &usize| group.mul(group.inv(*i), m.apply(*i));

    let cond1 = disjoint_union_eq(&[a44.iter().map(theta).collect(), a24.iter().map(theta).collect()], ord4)
        && disjoint_union_eq(&[a42.iter().map(theta).collect(), a22.iter().map(theta).collect()], ord2);
    let cond2 = disjoint_union_eq(&[a42.iter().map(phi).collect(), a24.iter().map(phi).collect()], ord4)
        && disjoint_union_eq(&[a44.iter().map(phi).collect(), a22.iter().map(phi).collect()], ord2);

    Lemma1Check { bijection: cond1, orthomorphism: cond1 && cond2 }
}

/// True when the image sets are pairwise disjoint and their union is
/// exactly `target` (sets as bitmasks over element indices).
pub(crate) fn disjoint_union_eq(image_sets: &[Vec<usize>], target: u64) -> bool {
    let mut union: u64 = 0;
    let mut total = 0u32;
    for set in image_sets {
        let mask: u64 = set.iter().fold(0, |m, &v| m | 1 << v);
        total += mask.count_ones();
        union |= mask;
    }
    total == union.count_ones() && union == target
}

/// Disjoint-cycle notation over the group's element labels: each cycle
/// starts at its minimal element, cycles are sorted by minimal element,
/// fixed points (the identity in particular) are omitted.
pub fn cycle_notation(images: &[usize], group: &FiniteGroup) -> String {
    let n = images.len();
    let mut visited = vec![false; n];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for start in 0..n {
        if visited[start] {
            continue;
        }
        let mut cycle = vec![start];
        visited[start] = true;
        let mut cur = images[start];
        while cur != start {
            visited[cur] = true;
            cycle.push(cur);
            cur = images[cur];
        }
        if cycle.len() >= 2 {
            cycles.push(cycle);
        }
    }
    if cycles.is_empty() {
        return "()".to_string();
    }
    cycles
        .iter()
        .map(|c| {
            let inner = c.iter().map(|&i| group.label(i)).collect::<Vec<_>>().join(" ");
            format!("({inner})")
        })
        .collect()
}
