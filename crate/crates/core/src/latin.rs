//! Latin-square cross-validation: translate orthomorphisms into Latin
//! squares and re-derive orthogonality from pair distinctness.
//!
//! [`latin_orthogonal`] shares no code with [`crate::are_orthogonal`];
//! agreement between the two routes over all pairs is statement
//! LATIN-ORACLE.

use crate::group::{FiniteGroup, GroupMap};
use crate::{Error, Result};

/// An n×n array in which every row and column is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatinSquare {
    order: usize,
    cells: Vec<usize>, // row-major
}

impl LatinSquare {
    /// Validates the Latin property of `cells` (row-major, length n²).
    pub fn new(order: usize, cells: Vec<usize>) -> Result<Self> {
        if order == 0 || cells.len() != order * order {
            return Err(Error::NotLatin(format!(
                "expected {order}x{order} cells, got {}",
                cells.len()
            )));
        }
        let mut seen = vec![false; order];
        for r in 0..order {
            seen.fill(false);
            for c in 0..order {
                let v = cells[r * order + c];
                if v >= order || seen[v] {
                    return Err(Error::NotLatin(format!("row {r} repeats or overflows at {v}")));
                }
                seen[v] = true;
            }
        }
        for c in 0..order {
            seen.fill(false);
            for r in 0..order {
                let v = cells[r * order + c];
                if seen[v] {
                    return Err(Error::NotLatin(format!("column {c} repeats value {v}")));
                }
                seen[v] = true;
            }
        }
        Ok(LatinSquare { order, cells })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Panics when `r` or `c` is out of range.
    pub fn get(&self, r: usize, c: usize) -> usize {
        assert!(r < self.order && c < self.order, "cell index out of range");
        self.cells[r * self.order + c]
    }

    /// Plain-text grid: one row per line, symbols space-separated.
    pub fn grid_string(&self) -> String {
        (0..self.order)
            .map(|r| {
                (0..self.order)
                    .map(|c| self.get(r, c).to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The square `L(i, j) = gᵢ · m(gⱼ)`.
///
/// Any bijective `m` (the Cayley table itself for the identity map)
/// yields a Latin square; a non-bijective map is reported as the
/// validation error.
pub fn to_latin_square(group: &FiniteGroup, m: &GroupMap) -> Result<LatinSquare> {
    let n = group.order();
    assert_eq!(m.len(), n, "map length must equal group order");
    let cells = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| group.mul(i, m.apply(j)))
        .collect();
    LatinSquare::new(n, cells)
}

/// True iff superimposing the two squares yields all n² ordered pairs.
///
/// Panics when the orders differ.
pub fn latin_orthogonal(l1: &LatinSquare, l2: &LatinSquare) -> bool {
    assert_eq!(l1.order(), l2.order(), "latin squares of different orders");
    let n = l1.order();
    let mut seen = vec![false; n * n];
    for r in 0..n {
        for c in 0..n {
            let pair = l1.get(r, c) * n + l2.get(r, c);
            if seen[pair] {
                return false;
            }
            seen[pair] = true;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::are_orthogonal;
    use crate::group::direct_product;
    use crate::ortho::{enumerate_orthomorphisms, Orthomorphism, DEFAULT_MAX_ORDER};
    use std::sync::Arc;

    const THETA_STAR: [usize; 8] = [0, 5, 7, 2, 6, 3, 1, 4];
    const PSI_1: [usize; 8] = [0, 6, 5, 1, 2, 4, 7, 3];

    fn z2z4() -> Arc<FiniteGroup> {
        Arc::new(direct_product(
            &FiniteGroup::cyclic(2).unwrap(),
            &FiniteGroup::cyclic(4).unwrap(),
        ))
    }

    #[test]
    fn trivial_group_gives_singleton_square() {
        let g = FiniteGroup::cyclic(1).unwrap();
        let sq = to_latin_square(&g, &GroupMap::identity(1)).unwrap();
        assert_eq!(sq.order(), 1);
        assert_eq!(sq.get(0, 0), 0);
    }

    #[test]
    fn cayley_table_is_latin() {
        let g = z2z4();
        let sq = to_latin_square(&g, &GroupMap::identity(8)).unwrap();
        assert_eq!(sq.get(3, 1), g.mul(3, 1));
    }

    #[test]
    fn non_bijective_map_rejected() {
        let g = z2z4();
        let m = GroupMap::new(vec![0; 8]);
        assert!(matches!(to_latin_square(&g, &m), Err(Error::NotLatin(_))));
    }

    #[test]
    fn theta_star_square_is_orthogonal_to_cayley_table() {
        let g = z2z4();
        let cayley = to_latin_square(&g, &GroupMap::identity(8)).unwrap();
        let l = to_latin_square(&g, &GroupMap::new(THETA_STAR.to_vec())).unwrap();
        assert!(latin_orthogonal(&cayley, &l));
    }

    #[test]
    fn square_is_never_orthogonal_to_itself_beyond_order_one() {
        let g = z2z4();
        let l = to_latin_square(&g, &GroupMap::new(THETA_STAR.to_vec())).unwrap();
        assert!(!latin_orthogonal(&l, &l));
    }

    #[test]
    fn partner_squares_are_orthogonal() {
        let g = z2z4();
        let l1 = to_latin_square(&g, &GroupMap::new(THETA_STAR.to_vec())).unwrap();
        let l2 = to_latin_square(&g, &GroupMap::new(PSI_1.to_vec())).unwrap();
        assert!(latin_orthogonal(&l1, &l2));
    }

    #[test]
    #[should_panic(expected = "different orders")]
    fn order_mismatch_panics() {
        let a = LatinSquare::new(1, vec![0]).unwrap();
        let b = LatinSquare::new(2, vec![0, 1, 1, 0]).unwrap();
        latin_orthogonal(&a, &b);
    }

    #[test]
    fn oracle_agrees_with_direct_orthogonality() {
        for g in [
            z2z4(),
            Arc::new(FiniteGroup::cyclic(3).unwrap()),
            Arc::new(direct_product(&FiniteGroup::cyclic(2).unwrap(), &FiniteGroup::cyclic(2).unwrap())),
        ] {
            let orth = enumerate_orthomorphisms(&g, DEFAULT_MAX_ORDER).unwrap();
            let squares: Vec<LatinSquare> = orth
                .iter()
                .map(|o: &Orthomorphism| to_latin_square(&g, &o.as_map()).unwrap())
                .collect();
            for i in 0..orth.len() {
                for j in i + 1..orth.len() {
                    assert_eq!(
                        latin_orthogonal(&squares[i], &squares[j]),
                        are_orthogonal(&orth[i], &orth[j]),
                        "group {} pair ({i}, {j})",
                        g.name()
                    );
                }
            }
        }
    }

    #[test]
    fn grid_string_format() {
        let g = FiniteGroup::cyclic(3).unwrap();
        let sq = to_latin_square(&g, &GroupMap::identity(3)).unwrap();
        assert_eq!(sq.grid_string(), "0 1 2\n1 2 0\n2 0 1");
    }
}
