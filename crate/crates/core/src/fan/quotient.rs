use super::FanData;
use crate::error::{Error, Result};
use crate::scalar::dot;

/// `Σ/σ_I` on the link of `I`, with vectors projected along `span{a_i : i ∈ I}`.
///
/// The ground set stays `[m]`; the vertices of `I` become ghosts with zero
/// vectors.
pub fn quotient_fan(f: &FanData, face: &[usize]) -> Result<FanData> {
    if !f.complex().is_face(face)? {
        return Err(Error::NotAFace(face.to_vec()));
    }
    let link = f.complex().link(face)?;
    let proj = f.columns(face).column_annihilator();
    let vectors = f
        .vectors()
        .iter()
        .map(|a| proj.iter().map(|phi| dot(phi, a)).collect())
        .collect();
    Ok(FanData::new(link, proj.len(), vectors, f.table().clone())?.with_max_bits(f.max_bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::is_complete;
    use crate::scalar::{Scalar, SymbolTable};
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
    fn triangle_quotient_by_a_ray() {
        let f = fan(&[[1, 0], [0, 1], [-1, -1]], &[&[1, 2], &[1, 3], &[2, 3]]);
        let q = quotient_fan(&f, &[1]).unwrap();
        assert_eq!(q.n(), 1);
        assert!(q.vector(1)[0].is_zero());
        let (x, y) = (&q.vector(2)[0], &q.vector(3)[0]);
        assert_eq!(x.sign(q.table(), 64).unwrap() * y.sign(q.table(), 64).unwrap(), -1);
        assert!(is_complete(&q).unwrap().complete());
    }

    #[test]
    fn trivial_quotient() {
        let f = fan(&[[1, 0], [0, 1], [-1, -1]], &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(quotient_fan(&f, &[]).unwrap(), f);
    }

    #[test]
    fn square_quotient() {
        let f = fan(
            &[[1, 0], [0, 1], [-1, 0], [0, -1]],
            &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]],
        );
        let q = quotient_fan(&f, &[2]).unwrap();
        assert_eq!(q.complex().maximal_faces(), &[vec![1], vec![3]]);
        assert!(is_complete(&q).unwrap().complete());
        assert!(matches!(quotient_fan(&f, &[1, 3]), Err(Error::NotAFace(_))));
    }
}
