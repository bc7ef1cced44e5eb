//! Orthogonality testing, the orthomorphism graph, exact clique number,
//! connected components with cycle detection, and homology.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;

use crate::group::{is_automorphism, FiniteGroup, GroupMap};
use crate::ortho::{disjoint_union_eq, order_partition, Orthomorphism};
use crate::{Error, Result};

/// True iff `x ↦ θ₁(x)⁻¹θ₂(x)` is a bijection.
///
/// Panics when the two orthomorphisms live over different groups.
pub fn are_orthogonal(t1: &Orthomorphism, t2: &Orthomorphism) -> bool {
    let g = same_group(t1, t2);
    let n = g.order();
    let mut seen = vec![false; n];
    for i in 0..n {
        let d = g.mul(g.inv(t1.apply(i)), t2.apply(i));
        if seen[d] {
            return false;
        }
        seen[d] = true;
    }
    true
}

fn same_group<'a>(t1: &'a Orthomorphism, t2: &Orthomorphism) -> &'a Arc<FiniteGroup> {
    assert!(
        Arc::ptr_eq(t1.group(), t2.group()) || *t1.group().as_ref() == *t2.group().as_ref(),
        "orthomorphisms over different groups"
    );
    t1.group()
}

/// Orthogonality evaluated through the intersected order partitions:
/// the difference-map images over the same-subscript intersections must
/// disjointly cover the order-2 elements, and those over the crossed
/// intersections the order-4 elements.
///
/// Agrees with [`are_orthogonal`] on every pair of orthomorphisms of an
/// exponent-4 group (statement LEM2-EQUIV). Panics when element orders
/// fall outside {1, 2, 4}.
pub fn lemma2_orthogonal(t1: &Orthomorphism, t2: &Orthomorphism) -> bool {
    let g = Arc::clone(same_group(t1, t2));
    let n = g.order();
    let p1 = order_partition(t1).expect("exponent-4 group required");
    let p2 = order_partition(t2).expect("exponent-4 group required");
    let ord4: u64 = (0..n).filter(|&i| g.element_order(i) == 4).map(|i| 1u64 << i).sum();
    let ord2: u64 = (0..n).filter(|&i| g.element_order(i) == 2).map(|i| 1u64 << i).sum();

    let diff = |xs: &[usize], ys: &[usize]| -> Vec<usize> {
        xs.iter()
            .filter(|i| ys.contains(i))
            .map(|&i| g.mul(g.inv(t1.apply(i)), t2.apply(i)))
            .collect()
    };

    let same_subscript = [
        diff(&p1.a44, &p2.a44),
        diff(&p1.a24, &p2.a24),
        diff(&p1.a42, &p2.a42),
        diff(&p1.a22, &p2.a22),
    ];
    let crossed = [
        diff(&p1.a44, &p2.a42),
        diff(&p1.a42, &p2.a44),
        diff(&p1.a24, &p2.a22),
        diff(&p1.a22, &p2.a24),
    ];
    disjoint_union_eq(&same_subscript, ord2) && disjoint_union_eq(&crossed, ord4)
}

/// The orthomorphism graph: vertices in their given order, adjacency
/// meaning orthogonality. Symmetric, no self-loops.
#[derive(Debug, Clone)]
pub struct OrthGraph {
    vertices: Vec<Orthomorphism>,
    adj: Vec<Vec<bool>>,
}

impl OrthGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Orthomorphism] {
        &self.vertices
    }

    pub fn group(&self) -> Option<&Arc<FiniteGroup>> {
        self.vertices.first().map(|v| v.group())
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&b| b).count()
    }

    pub fn neighbors(&self, i: usize) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&j| self.adj[i][j]).collect()
    }

    /// Edges as pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertex_count();
        (0..n)
            .flat_map(|i| (i + 1..n).filter(move |&j| self.adj[i][j]).map(move |j| (i, j)))
            .collect()
    }
}

/// Builds the full pairwise adjacency. Pair tests run in parallel; the
/// result is identical regardless of worker count.
///
/// Panics when the orthomorphisms do not all share one group.
pub fn build_graph(orthos: Vec<Orthomorphism>) -> OrthGraph {
    if let Some(first) = orthos.first() {
        for o in &orthos[1..] {
            same_group(first, o);
        }
    }
    let n = orthos.len();
    let upper: Vec<Vec<bool>> = (0..n)
        .into_par_iter()
        .map(|i| ((i + 1)..n).map(|j| are_orthogonal(&orthos[i], &orthos[j])).collect())
        .collect();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for (k, &e) in upper[i].iter().enumerate() {
            let j = i + 1 + k;
            adj[i][j] = e;
            adj[j][i] = e;
        }
    }
    OrthGraph { vertices: orthos, adj }
}

/// Exact maximum clique size of an arbitrary symmetric adjacency matrix;
/// 0 for the empty vertex set. Branch-and-bound with pivoting, fine up
/// to a few hundred vertices.
pub fn max_clique_size(adjacency: &[Vec<bool>]) -> usize {
    let n = adjacency.len();
    if n == 0 {
        return 0;
    }
    debug_assert!(adjacency.iter().all(|row| row.len() == n));
    debug_assert!((0..n).all(|i| !adjacency[i][i]));
    debug_assert!((0..n).all(|i| (0..n).all(|j| adjacency[i][j] == adjacency[j][i])));

    let nbr: Vec<Bits> = (0..n)
        .map(|i| {
            let mut b = Bits::zeros(n);
            for j in 0..n {
                if adjacency[i][j] {
                    b.set(j);
                }
            }
            b
        })
        .collect();
    let mut p = Bits::zeros(n);
    for i in 0..n {
        p.set(i);
    }
    let mut best = 0;
    expand(&nbr, 0, p, Bits::zeros(n), &mut best);
    best
}

/// Clique number ω of the orthomorphism graph.
pub fn clique_number(g: &OrthGraph) -> usize {
    max_clique_size(&g.adj)
}

fn expand(nbr: &[Bits], r_len: usize, mut p: Bits, mut x: Bits, best: &mut usize) {
    if p.is_empty() && x.is_empty() {
        *best = (*best).max(r_len);
        return;
    }
    if r_len + p.count() <= *best {
        return;
    }
    // Pivot on the vertex of P ∪ X with the most neighbours in P.
    let pivot = p
        .union(&x)
        .ones()
        .max_by_key(|&u| p.intersect(&nbr[u]).count())
        .expect("P ∪ X is non-empty here");
    let candidates: Vec<usize> = p.minus(&nbr[pivot]).ones().collect();
    for v in candidates {
        expand(nbr, r_len + 1, p.intersect(&nbr[v]), x.intersect(&nbr[v]), best);
        p.clear(v);
        x.set(v);
    }
}

/// Word-blocked vertex set for the clique search.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn zeros(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn clear(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
    fn zip_with(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(&a, &b)| f(a, b)).collect())
    }
    fn intersect(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & b)
    }
    fn union(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a | b)
    }
    fn minus(&self, other: &Bits) -> Bits {
        self.zip_with(other, |a, b| a & !b)
    }
    fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            (0..64).filter(move |b| bits & (1 << b) != 0).map(move |b| w * 64 + b)
        })
    }
}

/// Connected components, per-component cycle flags and the degree
/// histogram of the whole graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentReport {
    /// Vertex-index sets, each sorted, ordered by smallest member.
    pub components: Vec<Vec<usize>>,
    /// Per component: does it induce a simple cycle (connected, every
    /// member of degree 2, size at least 3)?
    pub cycle_flags: Vec<bool>,
    pub degree_histogram: BTreeMap<usize, usize>,
}

pub fn component_report(g: &OrthGraph) -> ComponentReport {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if g.adj[v][w] && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        components.push(comp);
    }
    // A component is maximal, so a member's graph degree equals its
    // degree within the component.
    let cycle_flags = components
        .iter()
        .map(|c| c.len() >= 3 && c.iter().all(|&v| g.degree(v) == 2))
        .collect();
    let mut degree_histogram = BTreeMap::new();
    for v in 0..n {
        *degree_histogram.entry(g.degree(v)).or_insert(0) += 1;
    }
    ComponentReport { components, cycle_flags, degree_histogram }
}

/// The homology `H_f(θ) = f ∘ θ ∘ f⁻¹` for a group automorphism `f`.
///
/// Errors when `f` is not an automorphism of `θ`'s group; the image is
/// re-validated as an orthomorphism.
pub fn homology(f: &GroupMap, theta: &Orthomorphism) -> Result<Orthomorphism> {
    let group = theta.group();
    if !is_automorphism(group, f) {
        return Err(Error::NotAutomorphism("homology requires f in Aut(G)".into()));
    }
    let f_inv = f.inverse().expect("automorphisms are bijective");
    let images = (0..group.order()).map(|i| f.apply(theta.apply(f_inv.apply(i)))).collect();
    Ok(Orthomorphism::new(Arc::clone(group), images)
        .expect("conjugate of an orthomorphism by an automorphism is an orthomorphism"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::direct_product;
    use crate::ortho::{enumerate_orthomorphisms, DEFAULT_MAX_ORDER};
    use proptest::prelude::*;

    const THETA_STAR: [usize; 8] = [0, 5, 7, 2, 6, 3, 1, 4];
    const PSI_1: [usize; 8] = [0, 6, 5, 1, 2, 4, 7, 3];
    const ALPHA_STAR: [usize; 8] = [0, 5, 2, 7, 4, 1, 6, 3];
    const THETA_ALPHA: [usize; 8] = [0, 7, 3, 4, 6, 1, 5, 2];

    fn z2z4() -> Arc<FiniteGroup> {
        Arc::new(direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(4).unwrap(),
        ))
    }

    fn ortho(g: &Arc<FiniteGroup>, images: &[usize]) -> Orthomorphism {
        Orthomorphism::new(Arc::clone(g), images.to_vec()).unwrap()
    }

    #[test]
    fn self_orthogonality_fails() {
        let g = z2z4();
        let t = ortho(&g, &THETA_STAR);
        assert!(!are_orthogonal(&t, &t));
    }

    #[test]
    fn theta_star_is_orthogonal_to_its_partner() {
        let g = z2z4();
        assert!(are_orthogonal(&ortho(&g, &THETA_STAR), &ortho(&g, &PSI_1)));
    }

    #[test]
    fn sharing_a44_blocks_orthogonality() {
        // Both 7-cycle instances with A44 = {(0,1),(1,1)}.
        let g = z2z4();
        assert!(!are_orthogonal(&ortho(&g, &THETA_STAR), &ortho(&g, &THETA_ALPHA)));
    }

    #[test]
    #[should_panic(expected = "different groups")]
    fn group_mismatch_panics() {
        let g = z2z4();
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        are_orthogonal(&ortho(&g, &THETA_STAR), &ortho(&z3, &[0, 2, 1]));
    }

    #[test]
    fn lemma2_examples() {
        let g = z2z4();
        let t = ortho(&g, &THETA_STAR);
        assert!(lemma2_orthogonal(&t, &ortho(&g, &PSI_1)));
        assert!(!lemma2_orthogonal(&t, &t));
    }

    #[test]
    fn lemma2_agrees_with_definition_on_all_pairs() {
        let g = z2z4();
        let orth = enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
        for i in 0..orth.len() {
            for j in i + 1..orth.len() {
                assert_eq!(
                    lemma2_orthogonal(&orth[i], &orth[j]),
                    are_orthogonal(&orth[i], &orth[j]),
                    "pair ({i}, {j})"
                );
            }
        }
    }

    #[test]
    fn z2z4_graph_is_two_regular() {
        let g = z2z4();
        let graph = build_graph(enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(graph.vertex_count(), 48);
        for v in 0..48 {
            assert_eq!(graph.degree(v), 2);
        }
        assert_eq!(graph.edges().len(), 48);
    }

    #[test]
    fn small_graphs() {
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let graph = build_graph(enumerate_orthomorphisms(&z3, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(graph.vertex_count(), 1);
        assert!(graph.edges().is_empty());

        let klein = Arc::new(direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(2).unwrap(),
        ));
        let graph = build_graph(enumerate_orthomorphisms(&klein, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(graph.vertex_count(), 2);
        assert_eq!(graph.edges(), vec![(0, 1)]);
        assert_eq!(clique_number(&graph), 2);
    }

    #[test]
    fn orthogonality_is_symmetric_on_all_pairs() {
        let g = z2z4();
        let orth = enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
        for i in 0..orth.len() {
            for j in 0..orth.len() {
                assert_eq!(are_orthogonal(&orth[i], &orth[j]), are_orthogonal(&orth[j], &orth[i]));
            }
        }
    }

    #[test]
    fn clique_number_examples() {
        assert_eq!(max_clique_size(&[]), 0);
        // Edgeless non-empty graph has clique number 1.
        assert_eq!(max_clique_size(&vec![vec![false; 3]; 3]), 1);

        let g = z2z4();
        let graph = build_graph(enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap());
        assert_eq!(clique_number(&graph), 2);
    }

    /// Test-only oracle: all-subsets maximum clique.
    fn naive_clique(adj: &[Vec<bool>]) -> usize {
        let n = adj.len();
        let mut best = 0;
        for mask in 0u32..(1 << n) {
            let members: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let ok = members
                .iter()
                .enumerate()
                .all(|(k, &i)| members[k + 1..].iter().all(|&j| adj[i][j]));
            if ok {
                best = best.max(members.len());
            }
        }
        best
    }

    #[test]
    fn clique_matches_naive_oracle_on_fixed_graphs() {
        // Deterministic pseudo-random graphs up to 18 vertices.
        let mut state = 0x9e37_79b9_7f4a_7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for n in [5usize, 9, 14, 18] {
            let mut adj = vec![vec![false; n]; n];
            for i in 0..n {
                for j in i + 1..n {
                    let e = next() % 100 < 40;
                    adj[i][j] = e;
                    adj[j][i] = e;
                }
            }
            assert_eq!(max_clique_size(&adj), naive_clique(&adj), "n = {n}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn clique_matches_naive_oracle(n in 1usize..10, bits in proptest::collection::vec(any::<bool>(), 45)) {
            let mut adj = vec![vec![false; n]; n];
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    adj[i][j] = bits[k];
                    adj[j][i] = bits[k];
                    k += 1;
                }
            }
            prop_assert_eq!(max_clique_size(&adj), naive_clique(&adj));
        }
    }

    #[test]
    fn component_report_on_z2z4() {
        let g = z2z4();
        let graph = build_graph(enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap());
        let report = component_report(&graph);
        assert_eq!(report.components.len(), 12);
        assert!(report.components.iter().all(|c| c.len() == 4));
        assert!(report.cycle_flags.iter().all(|&f| f));
        assert_eq!(report.degree_histogram.get(&2), Some(&48));
    }

    #[test]
    fn component_report_degenerate_cases() {
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let graph = build_graph(enumerate_orthomorphisms(&z3, DEFAULT_MAX_ORDER).unwrap());
        let report = component_report(&graph);
        assert_eq!(report.components, vec![vec![0]]);
        assert_eq!(report.cycle_flags, vec![false]);

        let empty = build_graph(Vec::new());
        let report = component_report(&empty);
        assert!(report.components.is_empty());
        assert_eq!(clique_number(&empty), 0);
    }

    #[test]
    fn homology_by_identity_is_identity() {
        let g = z2z4();
        let t = ortho(&g, &THETA_STAR);
        let h = homology(&GroupMap::identity(8), &t).unwrap();
        assert_eq!(h.images(), t.images());
    }

    #[test]
    fn homology_by_alpha_reaches_the_antipode() {
        let g = z2z4();
        let t = ortho(&g, &THETA_STAR);
        let h = homology(&GroupMap::new(ALPHA_STAR.to_vec()), &t).unwrap();
        assert_eq!(h.images(), THETA_ALPHA);
    }

    #[test]
    fn homology_rejects_non_automorphisms() {
        let g = z2z4();
        let t = ortho(&g, &THETA_STAR);
        // Swapping (0,1) and (0,2) does not preserve element orders.
        let f = GroupMap::new(vec![0, 2, 1, 3, 4, 5, 6, 7]);
        assert!(matches!(homology(&f, &t), Err(Error::NotAutomorphism(_))));
    }

    #[test]
    fn homology_permutes_orth_and_preserves_adjacency() {
        let g = z2z4();
        let orth = enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
        let graph = build_graph(orth.clone());
        let position = |o: &Orthomorphism| orth.iter().position(|c| c == o).unwrap();
        for f in crate::group::automorphisms(&g).unwrap() {
            let mapped: Vec<usize> = orth.iter().map(|t| position(&homology(&f, t).unwrap())).collect();
            let mut sorted = mapped.clone();
            sorted.sort_unstable();
            assert_eq!(sorted, (0..48).collect::<Vec<_>>(), "H_f is a bijection of Orth");
            for i in 0..48 {
                for j in 0..48 {
                    assert_eq!(graph.adjacent(mapped[i], mapped[j]), graph.adjacent(i, j));
                }
            }
        }
    }

    #[test]
    fn build_graph_deterministic_across_thread_counts() {
        let g = z2z4();
        let orth = enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
        let pool1 = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let pool4 = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let e1 = pool1.install(|| build_graph(orth.clone()).edges());
        let e4 = pool4.install(|| build_graph(orth.clone()).edges());
        assert_eq!(e1, e4);
    }
}
