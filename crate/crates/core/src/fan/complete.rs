use std::collections::BTreeMap;

use super::FanData;
use crate::error::Result;
use crate::scalar::{dot, ScalarMatrix};
use crate::simplicial::Face;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RidgeFailure {
    /// The ridge lies in this many maximal faces instead of two.
    Count { ridge: Face, count: usize },
    /// The two opposite generators are not strictly separated by the
    /// ridge's hyperplane.
    SameSide { ridge: Face, faces: (Face, Face) },
    /// The ridge vectors do not cut out a hyperplane.
    Degenerate { ridge: Face },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    /// Maximal faces whose size differs from `n`.
    pub wrong_size: Vec<Face>,
    pub ridges: Vec<RidgeFailure>,
    /// Number of connected components of the dual graph.
    pub components: usize,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        self.wrong_size.is_empty() && self.ridges.is_empty() && self.components == 1
    }

    /// One human-readable line per failure.
    pub fn diagnostics(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .wrong_size
            .iter()
            .map(|f| format!("maximal face {f:?} does not have n elements"))
            .collect();
        for r in &self.ridges {
            out.push(match r {
                RidgeFailure::Count { ridge, count } => {
                    format!("ridge {ridge:?} lies in {count} maximal faces")
                }
                RidgeFailure::SameSide { ridge, faces } => format!(
                    "ridge {ridge:?}: cones {:?} and {:?} lie on the same side",
                    faces.0, faces.1
                ),
                RidgeFailure::Degenerate { ridge } => format!("ridge {ridge:?} spans no hyperplane"),
            });
        }
        if self.components != 1 {
            out.push(format!("dual graph has {} components", self.components));
        }
        out
    }
}

/// Completeness through pure-dimensionality, the two-sided ridge condition
/// and connectivity of the dual graph.
pub fn is_complete(f: &FanData) -> Result<CompletenessReport> {
    let n = f.n();
    let facets = f.complex().facets();
    let mut report = CompletenessReport {
        wrong_size: facets.iter().filter(|g| g.len() != n).cloned().collect(),
        ..Default::default()
    };
    let mut ridges: BTreeMap<Face, Vec<usize>> = BTreeMap::new();
    if n > 0 {
        for (k, g) in facets.iter().enumerate().filter(|(_, g)| g.len() == n) {
            for skip in 0..n {
                let r: Face = g
                    .iter()
                    .enumerate()
                    .filter(|&(x, _)| x != skip)
                    .map(|(_, &v)| v)
                    .collect();
                ridges.entry(r).or_default().push(k);
            }
        }
    }
    // union-find over maximal faces, joined through shared ridges
    let mut parent: Vec<usize> = (0..facets.len()).collect();
    fn root(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for (ridge, owners) in &ridges {
        if owners.len() != 2 {
            report.ridges.push(RidgeFailure::Count {
                ridge: ridge.clone(),
                count: owners.len(),
            });
            continue;
        }
        let (g, h) = (&facets[owners[0]], &facets[owners[1]]);
        let (a, b) = (root(&mut parent, owners[0]), root(&mut parent, owners[1]));
        parent[a] = b;
        let normal = ScalarMatrix::from_columns(&ridge.iter().map(|&i| f.vector(i).clone()).collect::<Vec<_>>(), n)
            .column_annihilator();
        if normal.len() != 1 {
            report.ridges.push(RidgeFailure::Degenerate { ridge: ridge.clone() });
            continue;
        }
        let p = *g.iter().find(|v| !ridge.contains(v)).expect("opposite vertex");
        let q = *h.iter().find(|v| !ridge.contains(v)).expect("opposite vertex");
        let sp = f.sign(&dot(&normal[0], f.vector(p)))?;
        let sq = f.sign(&dot(&normal[0], f.vector(q)))?;
        if sp * sq != -1 {
            report.ridges.push(RidgeFailure::SameSide {
                ridge: ridge.clone(),
                faces: (g.clone(), h.clone()),
            });
        }
    }
    let mut roots: Vec<usize> = (0..facets.len()).map(|x| root(&mut parent, x)).collect();
    roots.sort();
    roots.dedup();
    report.components = roots.len();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Scalar, SymbolTable};
    use crate::simplicial::SimplicialComplex;

    fn fan(n: usize, vs: &[&[i64]], faces: &[&[usize]]) -> FanData {
        let k = SimplicialComplex::new(vs.len(), faces.iter().map(|f| f.to_vec()).collect()).unwrap();
        let vectors = vs
            .iter()
            .map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        FanData::new(k, n, vectors, SymbolTable::new()).unwrap()
    }

    #[test]
    fn triangle_fan_is_complete() {
        let f = fan(2, &[&[1, 0], &[0, 1], &[-1, -1]], &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(is_complete(&f).unwrap().complete());
    }

    #[test]
    fn quadrant_is_not_complete() {
        let f = fan(2, &[&[1, 0], &[0, 1]], &[&[1, 2]]);
        let r = is_complete(&f).unwrap();
        assert!(!r.complete());
        assert!(r.ridges.contains(&RidgeFailure::Count {
            ridge: vec![1],
            count: 1
        }));
    }

    #[test]
    fn square_fan_is_complete() {
        let f = fan(
            2,
            &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]],
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
        );
        assert!(is_complete(&f).unwrap().complete());
    }

    #[test]
    fn same_side_ridge_is_flagged() {
        // both cones on the positive side of the ray through e1
        let f = fan(2, &[&[1, 0], &[1, 1], &[1, 2]], &[&[1, 2], &[1, 3]]);
        let r = is_complete(&f).unwrap();
        assert!(r
            .ridges
            .iter()
            .any(|x| matches!(x, RidgeFailure::SameSide { ridge, .. } if ridge == &vec![1])));
    }

    #[test]
    fn zero_dimensional_empty_fan_is_complete() {
        let k = SimplicialComplex::empty_complex(2);
        let f = FanData::new(k, 0, vec![vec![], vec![]], SymbolTable::new()).unwrap();
        assert!(is_complete(&f).unwrap().complete());
    }

    #[test]
    fn one_dimensional_fan() {
        let f = fan(1, &[&[1], &[-2]], &[&[1], &[2]]);
        assert!(is_complete(&f).unwrap().complete());
        let g = fan(1, &[&[1], &[2]], &[&[1], &[2]]);
        assert!(!is_complete(&g).unwrap().complete());
    }
}
