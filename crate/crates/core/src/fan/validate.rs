use super::FanData;
use crate::error::Result;
use crate::scalar::{LpOutcome, LpProblem, Scalar, ScalarVec};
use crate::simplicial::Face;

/// Two maximal cones whose relative interiors meet, with the meeting point
/// written both ways: `Σ μ_i a_i = Σ ν_j a_j`, all `μ, ν ≥ 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub first: Face,
    pub second: Face,
    pub mu: ScalarVec,
    pub nu: ScalarVec,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FanReport {
    /// Maximal faces whose vectors are linearly dependent.
    pub dependent_faces: Vec<Face>,
    pub overlaps: Vec<Overlap>,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.dependent_faces.is_empty() && self.overlaps.is_empty()
    }

    pub fn overlap_pairs(&self) -> Vec<(Face, Face)> {
        self.overlaps
            .iter()
            .map(|o| (o.first.clone(), o.second.clone()))
            .collect()
    }
}

/// Check linear independence on every face and disjointness of the relative
/// interiors of every pair of maximal cones.
pub fn validate_fan(f: &FanData) -> Result<FanReport> {
    let mut report = FanReport::default();
    let facets = f.complex().maximal_faces();
    for face in facets {
        // independence of a maximal face implies it for all its subfaces
        if f.columns(face).rank() < face.len() {
            report.dependent_faces.push(face.clone());
        }
    }
    for (x, i) in facets.iter().enumerate() {
        for j in &facets[x + 1..] {
            if let Some(o) = overlap(f, i, j)? {
                report.overlaps.push(o);
            }
        }
    }
    Ok(report)
}

fn overlap(f: &FanData, i: &Face, j: &Face) -> Result<Option<Overlap>> {
    let (p, q) = (i.len(), j.len());
    let mut lp = LpProblem::new(p + q);
    for k in 0..p + q {
        let mut row = vec![Scalar::zero(); p + q];
        row[k] = Scalar::one();
        lp.add_ge(row, Scalar::one());
    }
    for r in 0..f.n() {
        let mut row: Vec<Scalar> = i.iter().map(|&a| f.vector(a)[r].clone()).collect();
        row.extend(j.iter().map(|&b| -&f.vector(b)[r]));
        lp.add_eq(row, Scalar::zero());
    }
    Ok(match lp.solve(f.table(), f.max_bits())? {
        LpOutcome::Feasible(x) => Some(Overlap {
            first: i.clone(),
            second: j.clone(),
            mu: x[..p].to_vec(),
            nu: x[p..].to_vec(),
        }),
        LpOutcome::Infeasible(_) => None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::SymbolTable;
    use crate::simplicial::SimplicialComplex;

    fn fan(vs: &[[i64; 2]], faces: &[&[usize]]) -> FanData {
        let k = SimplicialComplex::new(vs.len(), faces.iter().map(|f| f.to_vec()).collect()).unwrap();
        let vectors = vs
            .iter()
            .map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect())
            .collect();
        FanData::new(k, 2, vectors, SymbolTable::new()).unwrap()
    }

    #[test]
    fn triangle_fan_is_valid() {
        let f = fan(&[[1, 0], [0, 1], [-1, -1]], &[&[1, 2], &[1, 3], &[2, 3]]);
        assert!(validate_fan(&f).unwrap().ok());
    }

    #[test]
    fn overlapping_cones_are_flagged() {
        let f = fan(&[[1, 0], [0, 1], [1, 1]], &[&[1, 2], &[1, 3]]);
        let r = validate_fan(&f).unwrap();
        assert_eq!(r.overlap_pairs(), vec![(vec![1, 2], vec![1, 3])]);
        let o = &r.overlaps[0];
        // the witness point agrees from both sides
        let lhs: Vec<Scalar> = (0..2)
            .map(|c| &(&o.mu[0] * &f.vector(1)[c]) + &(&o.mu[1] * &f.vector(2)[c]))
            .collect();
        let rhs: Vec<Scalar> = (0..2)
            .map(|c| &(&o.nu[0] * &f.vector(1)[c]) + &(&o.nu[1] * &f.vector(3)[c]))
            .collect();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn repeated_vector_in_a_face_is_dependent() {
        let f = fan(&[[1, 0], [1, 0]], &[&[1, 2]]);
        assert_eq!(validate_fan(&f).unwrap().dependent_faces, vec![vec![1, 2]]);
    }
}
