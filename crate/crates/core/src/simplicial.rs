//! Abstract simplicial complexes on the ground set `[m] = {1, …, m}`.
//!
//! A complex is stored through its maximal faces. Indices are 1-based
//! everywhere in this module and in everything built on it. Elements of
//! `[m]` that lie in no face are ghost vertices.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A face: strictly increasing 1-based indices.
pub type Face = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SimplicialComplex {
    m: usize,
    maximal_faces: Vec<Face>,
}

fn normalize(face: &[usize]) -> Face {
    let set: BTreeSet<usize> = face.iter().copied().collect();
    set.into_iter().collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Keep only the inclusion-maximal sets, deduplicated and sorted.
fn maximal_only(mut faces: Vec<Face>) -> Vec<Face> {
    faces.sort();
    faces.dedup();
    let keep: Vec<Face> = faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g.len() > f.len() && is_subset(f, g)))
        .cloned()
        .collect();
    // {∅} is represented by the empty list of maximal faces
    keep.into_iter().filter(|f| !f.is_empty()).collect()
}

impl SimplicialComplex {
    /// Build from a list of faces; non-maximal entries are dropped.
    pub fn new(m: usize, faces: Vec<Face>) -> Result<Self> {
        let faces: Vec<Face> = faces.iter().map(|f| normalize(f)).collect();
        for f in &faces {
            for &i in f {
                if i == 0 || i > m {
                    return Err(Error::IndexOutOfRange { index: i, m });
                }
            }
        }
        Ok(SimplicialComplex {
            m,
            maximal_faces: maximal_only(faces),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn maximal_faces(&self) -> &[Face] {
        &self.maximal_faces
    }

    /// Maximal faces, with `{∅}` reported as a single empty face.
    pub fn facets(&self) -> Vec<Face> {
        if self.maximal_faces.is_empty() {
            vec![Vec::new()]
        } else {
            self.maximal_faces.clone()
        }
    }

    pub fn check_subset(&self, face: &[usize]) -> Result<()> {
        match face.iter().find(|&&i| i == 0 || i > self.m) {
            Some(&i) => Err(Error::IndexOutOfRange { index: i, m: self.m }),
            None => Ok(()),
        }
    }

    pub fn is_face(&self, face: &[usize]) -> Result<bool> {
        self.check_subset(face)?;
        let f = normalize(face);
        Ok(f.is_empty() || self.maximal_faces.iter().any(|g| is_subset(&f, g)))
    }

    pub fn vertices(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.maximal_faces.iter().flatten().copied().collect();
        set.into_iter().collect()
    }

    pub fn ghosts(&self) -> Vec<usize> {
        let v = self.vertices();
        (1..=self.m).filter(|i| !v.contains(i)).collect()
    }

    pub fn dimension(&self) -> isize {
        self.maximal_faces
            .iter()
            .map(|f| f.len() as isize - 1)
            .max()
            .unwrap_or(-1)
    }

    /// Every face, ∅ included, ordered by size then lexicographically.
    pub fn faces(&self) -> Vec<Face> {
        let mut all: BTreeSet<Face> = BTreeSet::new();
        all.insert(Vec::new());
        for f in &self.maximal_faces {
            let k = f.len();
            for mask in 1u64..(1u64 << k) {
                let sub: Face = (0..k).filter(|b| mask >> b & 1 == 1).map(|b| f[b]).collect();
                all.insert(sub);
            }
        }
        let mut v: Vec<Face> = all.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    /// `K_J`: the faces contained in `J`, on the same ground set.
    pub fn full_subcomplex(&self, j: &[usize]) -> Result<SimplicialComplex> {
        self.check_subset(j)?;
        let j = normalize(j);
        let faces = self
            .maximal_faces
            .iter()
            .map(|f| f.iter().copied().filter(|x| j.binary_search(x).is_ok()).collect())
            .collect();
        SimplicialComplex::new(self.m, faces)
    }

    /// `lk_K I`: faces disjoint from `I` whose union with `I` is a face.
    pub fn link(&self, face: &[usize]) -> Result<SimplicialComplex> {
        if !self.is_face(face)? {
            return Err(Error::NotAFace(normalize(face)));
        }
        let i = normalize(face);
        let faces = self
            .maximal_faces
            .iter()
            .filter(|f| is_subset(&i, f))
            .map(|f| f.iter().copied().filter(|x| i.binary_search(x).is_err()).collect())
            .collect();
        SimplicialComplex::new(self.m, faces)
    }

    /// Maximal faces containing `face`.
    pub fn star_facets(&self, face: &[usize]) -> Vec<Face> {
        let f = normalize(face);
        self.facets().into_iter().filter(|g| is_subset(&f, g)).collect()
    }

    /// The nerve of a polytope given its per-vertex sets of incident facets.
    pub fn nerve(m: usize, incidences: &[Vec<usize>]) -> Result<SimplicialComplex> {
        if incidences.is_empty() {
            return Err(Error::Input("empty incidence list".into()));
        }
        SimplicialComplex::new(m, incidences.to_vec())
    }

    /// `∂Δ^q` on vertices `1..=q+1` inside `[m]`; the rest are ghosts.
    pub fn boundary_of_simplex(q: usize, m: usize) -> Result<SimplicialComplex> {
        if q >= m {
            return Err(Error::Input(format!(
                "boundary_of_simplex needs q < m, got q={q}, m={m}"
            )));
        }
        let verts: Vec<usize> = (1..=q + 1).collect();
        let faces = (0..=q)
            .map(|skip| verts.iter().copied().filter(|&v| v != skip + 1).collect())
            .collect();
        SimplicialComplex::new(m, faces)
    }

    /// `{∅}` on `[m]`: every vertex is a ghost.
    pub fn empty_complex(m: usize) -> SimplicialComplex {
        SimplicialComplex {
            m,
            maximal_faces: Vec::new(),
        }
    }

    /// Join `K1 * K2` with `K2` shifted by `m1`.
    pub fn join(k1: &SimplicialComplex, k2: &SimplicialComplex) -> SimplicialComplex {
        let shift = k1.m;
        let mut faces = Vec::new();
        for f in k1.facets() {
            for g in k2.facets() {
                let mut h = f.clone();
                h.extend(g.iter().map(|x| x + shift));
                faces.push(h);
            }
        }
        SimplicialComplex::new(k1.m + k2.m, faces).expect("indices in range")
    }
}
