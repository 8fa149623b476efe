use super::FanData;
use crate::error::{Error, Result};
use crate::scalar::{dot, LpProblem, Scalar, ScalarMatrix, ScalarVec, SymbolTable, DEFAULT_MAX_BITS};
use crate::simplicial::{Face, SimplicialComplex};

/// `P = {u : ⟨a_i, u⟩ + b_i ≥ 0 for all i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolytopeH {
    pub n: usize,
    pub vectors: Vec<ScalarVec>,
    pub offsets: ScalarVec,
    pub table: SymbolTable,
    pub max_bits: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub point: ScalarVec,
    /// Facets through the vertex, 1-based.
    pub active: Face,
}

#[derive(Clone, Debug)]
pub struct NormalFan {
    pub fan: FanData,
    pub vertices: Vec<Vertex>,
}

impl PolytopeH {
    pub fn new(n: usize, vectors: Vec<ScalarVec>, offsets: ScalarVec, table: SymbolTable) -> Result<Self> {
        if vectors.len() != offsets.len() {
            return Err(Error::Dimension(format!(
                "{} vectors but {} offsets",
                vectors.len(),
                offsets.len()
            )));
        }
        if vectors.iter().any(|v| v.len() != n) {
            return Err(Error::Dimension(format!("every vector needs {n} coordinates")));
        }
        Ok(PolytopeH {
            n,
            vectors,
            offsets,
            table,
            max_bits: DEFAULT_MAX_BITS,
        })
    }

    pub fn m(&self) -> usize {
        self.vectors.len()
    }

    /// `⟨a_i, u⟩ + b_i` for every `i`.
    pub fn slacks(&self, u: &[Scalar]) -> ScalarVec {
        self.vectors
            .iter()
            .zip(&self.offsets)
            .map(|(a, b)| &dot(a, u) + b)
            .collect()
    }

    pub fn contains(&self, u: &[Scalar]) -> Result<bool> {
        for s in self.slacks(u) {
            if s.sign(&self.table, self.max_bits)? < 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// True when the recession cone `{d : ⟨a_i, d⟩ ≥ 0}` is `{0}`.
    pub fn is_bounded(&self) -> Result<bool> {
        for k in 0..self.n {
            for sgn in [1, -1] {
                let mut lp = LpProblem::new(self.n);
                for a in &self.vectors {
                    lp.add_ge(a.clone(), Scalar::zero());
                }
                let mut e = vec![Scalar::zero(); self.n];
                e[k] = Scalar::from_int(sgn);
                lp.add_ge(e, Scalar::one());
                if lp.solve(&self.table, self.max_bits)?.is_feasible() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// All vertices, by brute force over `n`-subsets of the facets.
    pub fn vertices(&self) -> Result<Vec<Vertex>> {
        let mut out: Vec<Vertex> = Vec::new();
        for subset in subsets(self.m(), self.n) {
            let rows: Vec<ScalarVec> = subset.iter().map(|&i| self.vectors[i].clone()).collect();
            let m = ScalarMatrix::from_rows(rows)?;
            if m.rank() < self.n {
                continue;
            }
            let rhs: ScalarVec = subset.iter().map(|&i| -&self.offsets[i]).collect();
            let u = m.solve(&rhs).expect("invertible system");
            if out.iter().any(|v| v.point == u) || !self.contains(&u)? {
                continue;
            }
            let active = self
                .slacks(&u)
                .iter()
                .enumerate()
                .filter(|(_, s)| s.is_zero())
                .map(|(i, _)| i + 1)
                .collect();
            out.push(Vertex { point: u, active });
        }
        Ok(out)
    }
}

/// All `k`-subsets of `0..m` in lexicographic order.
pub(crate) fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Normal fan of a simple, bounded, full-dimensional polytope.
pub fn normal_fan(p: &PolytopeH) -> Result<NormalFan> {
    if p.n == 0 {
        return Err(Error::DegeneratePolytope("ambient dimension is zero".into()));
    }
    if !p.is_bounded()? {
        return Err(Error::DegeneratePolytope("polyhedron is unbounded".into()));
    }
    let vertices = p.vertices()?;
    if vertices.is_empty() {
        return Err(Error::DegeneratePolytope("polytope is empty".into()));
    }
    let base = &vertices[0].point;
    let diffs: Vec<ScalarVec> = vertices[1..]
        .iter()
        .map(|v| v.point.iter().zip(base).map(|(x, y)| x - y).collect())
        .collect();
    if diffs.is_empty() || ScalarMatrix::from_rows(diffs)?.rank() < p.n {
        return Err(Error::DegeneratePolytope("polytope is not full-dimensional".into()));
    }
    if let Some(v) = vertices.iter().find(|v| v.active.len() > p.n) {
        return Err(Error::NotSimple {
            active: v.active.len(),
            n: p.n,
        });
    }
    let incid: Vec<Face> = vertices.iter().map(|v| v.active.clone()).collect();
    let k = SimplicialComplex::nerve(p.m(), &incid)?;
    let fan = FanData::new(k, p.n, p.vectors.clone(), p.table.clone())?.with_max_bits(p.max_bits);
    Ok(NormalFan { fan, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(vs: &[[i64; 2]], bs: &[i64]) -> PolytopeH {
        PolytopeH::new(
            2,
            vs.iter()
                .map(|v| v.iter().map(|&x| Scalar::from_int(x)).collect())
                .collect(),
            bs.iter().map(|&x| Scalar::from_int(x)).collect(),
            SymbolTable::new(),
        )
        .unwrap()
    }

    #[test]
    fn square() {
        let p = poly(&[[1, 0], [0, 1], [-1, 0], [0, -1]], &[1, 1, 1, 1]);
        let nf = normal_fan(&p).unwrap();
        assert_eq!(nf.vertices.len(), 4);
        assert_eq!(
            nf.fan.complex().maximal_faces(),
            &[vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]
        );
    }

    #[test]
    fn standard_triangle() {
        let p = poly(&[[1, 0], [0, 1], [-1, -1]], &[0, 0, 1]);
        let nf = normal_fan(&p).unwrap();
        assert_eq!(nf.fan.complex().maximal_faces(), &[vec![1, 2], vec![1, 3], vec![2, 3]]);
    }

    #[test]
    fn redundant_inequality_becomes_a_ghost() {
        let p = poly(&[[1, 0], [0, 1], [-1, 0], [0, -1], [1, 1]], &[1, 1, 1, 1, 5]);
        let nf = normal_fan(&p).unwrap();
        assert_eq!(nf.fan.complex().ghosts(), vec![5]);
        assert_eq!(nf.fan.complex().maximal_faces().len(), 4);
    }

    #[test]
    fn degenerate_inputs() {
        let half_plane = poly(&[[1, 0]], &[0]);
        assert!(matches!(normal_fan(&half_plane), Err(Error::DegeneratePolytope(_))));
        let empty = poly(&[[1, 0], [-1, 0], [0, 1], [0, -1]], &[-2, 1, 1, 1]);
        assert!(matches!(normal_fan(&empty), Err(Error::DegeneratePolytope(_))));
        // square with a diagonal cut through the vertex (1,1)
        let pyramid_tip = poly(&[[1, 0], [0, 1], [-1, 0], [0, -1], [-1, -1]], &[1, 1, 1, 1, 2]);
        assert_eq!(
            normal_fan(&pyramid_tip).unwrap_err(),
            Error::NotSimple { active: 3, n: 2 }
        );
    }
}
