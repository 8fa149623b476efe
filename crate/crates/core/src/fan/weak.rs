use super::FanData;
use crate::error::{Error, Result};
use crate::scalar::{dot, LpOutcome, LpProblem, Scalar, ScalarMatrix, ScalarVec};
use crate::simplicial::Face;

/// Offsets `b`, one vertex `u_I` per maximal face and the exponent vectors
/// `β_I = (⟨a_i, u_I⟩ + b_i)_i`, scaled so that nonzero entries are `≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakNormalCertificate {
    pub offsets: ScalarVec,
    pub faces: Vec<Face>,
    pub vertices: Vec<ScalarVec>,
    pub betas: Vec<ScalarVec>,
    /// The certificate was multiplied by `2^scale_exponent`.
    pub scale_exponent: i32,
    /// `(I, i)` pairs with `i ∉ I` whose β coordinate is zero anyway.
    pub forced_zeros: Vec<(Face, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeakNormalOutcome {
    Found(WeakNormalCertificate),
    NotFound {
        /// Farkas row of the strict system, one entry per constraint.
        farkas: ScalarVec,
        forced_zeros: Vec<(Face, usize)>,
        reason: String,
    },
}

impl WeakNormalCertificate {
    /// Exact re-check of every certificate invariant against `f`.
    pub fn verify(&self, f: &FanData) -> Result<bool> {
        let two = Scalar::from_int(2);
        if self.faces != f.complex().facets() || self.offsets.len() != f.m() {
            return Ok(false);
        }
        for ((face, u), beta) in self.faces.iter().zip(&self.vertices).zip(&self.betas) {
            for i in 1..=f.m() {
                let v = &dot(f.vector(i), u) + &self.offsets[i - 1];
                if v != beta[i - 1] {
                    return Ok(false);
                }
                if face.contains(&i) {
                    if !v.is_zero() {
                        return Ok(false);
                    }
                } else if !v.is_zero() && f.sign(&(&v - &two))? < 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn beta(f: &FanData, u: &[Scalar], b: &[Scalar]) -> ScalarVec {
    (1..=f.m()).map(|i| &dot(f.vector(i), u) + &b[i - 1]).collect()
}

/// Build the certificate from user-supplied offsets, if they work.
pub fn certificate_from_offsets(f: &FanData, b: &[Scalar]) -> Result<Option<WeakNormalCertificate>> {
    if b.len() != f.m() {
        return Err(Error::Dimension(format!("{} offsets for m = {}", b.len(), f.m())));
    }
    let faces = f.complex().facets();
    let mut vertices = Vec::new();
    for face in &faces {
        if face.len() != f.n() {
            return Ok(None);
        }
        let rows: Vec<ScalarVec> = face.iter().map(|&i| f.vector(i).clone()).collect();
        let rhs: ScalarVec = face.iter().map(|&i| -&b[i - 1]).collect();
        let u = if f.n() == 0 {
            Vec::new()
        } else {
            match ScalarMatrix::from_rows(rows)?.solve(&rhs) {
                Some(u) => u,
                None => return Ok(None),
            }
        };
        for (i, v) in beta(f, &u, b).iter().enumerate() {
            if !face.contains(&(i + 1)) && f.sign(v)? < 0 {
                return Ok(None);
            }
        }
        vertices.push(u);
    }
    if !affinely_spanning(&vertices, f.n())? {
        return Ok(None);
    }
    finish(f, faces, b.to_vec(), vertices).map(Some)
}

struct Layout {
    m: usize,
    n: usize,
    faces: Vec<Face>,
}

impl Layout {
    fn vars(&self) -> usize {
        self.m + self.n * self.faces.len()
    }

    /// Row for `⟨a_i, u_I⟩ + b_i` in the joint unknowns `(b, u_I…)`.
    fn row(&self, f: &FanData, k: usize, i: usize) -> ScalarVec {
        let mut r = vec![Scalar::zero(); self.vars()];
        r[i - 1] = Scalar::one();
        for (c, a) in f.vector(i).iter().enumerate() {
            r[self.m + k * self.n + c] = a.clone();
        }
        r
    }

    fn split(&self, x: &[Scalar]) -> (ScalarVec, Vec<ScalarVec>) {
        let b = x[..self.m].to_vec();
        let us = (0..self.faces.len())
            .map(|k| x[self.m + k * self.n..self.m + (k + 1) * self.n].to_vec())
            .collect();
        (b, us)
    }

    /// The joint system, with `lower(k, i)` as the bound for each `i ∉ I_k`.
    fn problem(&self, f: &FanData, lower: impl Fn(usize, usize) -> Scalar) -> LpProblem {
        let mut lp = LpProblem::new(self.vars());
        for (k, face) in self.faces.iter().enumerate() {
            for i in 1..=self.m {
                let row = self.row(f, k, i);
                if face.contains(&i) {
                    lp.add_eq(row, Scalar::zero());
                } else {
                    lp.add_ge(row, lower(k, i));
                }
            }
        }
        lp
    }
}

/// Search for offsets `b` making the given fan a subdivision of a normal
/// fan, with the generators held fixed.
pub fn weak_normal_certificate(f: &FanData) -> Result<WeakNormalOutcome> {
    let layout = Layout {
        m: f.m(),
        n: f.n(),
        faces: f.complex().facets(),
    };
    if layout.faces.iter().any(|g| g.len() != f.n()) {
        return Err(Error::Input(
            "weak normality needs every maximal face to have n elements".into(),
        ));
    }
    let strict = layout.problem(f, |_, _| Scalar::one());
    let farkas = match strict.solve(f.table(), f.max_bits())? {
        LpOutcome::Feasible(x) => {
            let (b, us) = layout.split(&x);
            return finish(f, layout.faces, b, us).map(WeakNormalOutcome::Found);
        }
        LpOutcome::Infeasible(u) => u,
    };
    // Some coordinates must vanish: find which pairs can be made positive on
    // their own, and add up those solutions.
    let mut total = vec![Scalar::zero(); layout.vars()];
    let mut forced = Vec::new();
    for (k, face) in layout.faces.iter().enumerate() {
        for i in (1..=layout.m).filter(|i| !face.contains(i)) {
            let lp = layout.problem(f, |kk, ii| {
                if (kk, ii) == (k, i) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            });
            match lp.solve(f.table(), f.max_bits())? {
                LpOutcome::Feasible(x) => {
                    total = total.iter().zip(&x).map(|(a, b)| a + b).collect();
                }
                LpOutcome::Infeasible(_) => forced.push((face.clone(), i)),
            }
        }
    }
    let (b, us) = layout.split(&total);
    if !affinely_spanning(&us, f.n())? {
        return Ok(WeakNormalOutcome::NotFound {
            farkas,
            forced_zeros: forced,
            reason: "no full-dimensional polytope fits the fan".into(),
        });
    }
    let mut cert = finish(f, layout.faces, b, us)?;
    cert.forced_zeros = forced;
    Ok(WeakNormalOutcome::Found(cert))
}

/// Whether the points affinely span an `n`-dimensional space.
fn affinely_spanning(us: &[ScalarVec], n: usize) -> Result<bool> {
    if n == 0 {
        return Ok(true);
    }
    if us.len() < 2 {
        return Ok(false);
    }
    let diffs: Vec<ScalarVec> = us[1..]
        .iter()
        .map(|u| u.iter().zip(&us[0]).map(|(x, y)| x - y).collect())
        .collect();
    Ok(ScalarMatrix::from_rows(diffs)?.rank() == n)
}

/// Exact re-check of the strict-system Farkas row reported by
/// [`weak_normal_certificate`].
pub fn verify_weak_farkas(f: &FanData, farkas: &[Scalar]) -> Result<bool> {
    let layout = Layout {
        m: f.m(),
        n: f.n(),
        faces: f.complex().facets(),
    };
    layout
        .problem(f, |_, _| Scalar::one())
        .verify_farkas(farkas, f.table(), f.max_bits())
}

/// Scale by the power of two that brings the smallest nonzero β entry into
/// `[2, 4)`, and assemble the certificate.
fn finish(f: &FanData, faces: Vec<Face>, b: ScalarVec, us: Vec<ScalarVec>) -> Result<WeakNormalCertificate> {
    let betas: Vec<ScalarVec> = us.iter().map(|u| beta(f, u, &b)).collect();
    let mut min: Option<Scalar> = None;
    for v in betas.iter().flatten().filter(|v| !v.is_zero()) {
        min = Some(match min {
            Some(cur) if f.sign(&(v - &cur))? >= 0 => cur,
            _ => v.clone(),
        });
    }
    let mut k = 0i32;
    if let Some(min) = min {
        let two = Scalar::from_int(2);
        let four = Scalar::from_int(4);
        let mut x = min;
        while f.sign(&(&x - &two))? < 0 {
            x = &x * &two;
            k += 1;
        }
        while f.sign(&(&x - &four))? >= 0 {
            x = &x * &Scalar::ratio(1, 2);
            k -= 1;
        }
    }
    let factor = if k >= 0 {
        Scalar::from_int(2).pow(k as u32)
    } else {
        Scalar::ratio(1, 2).pow((-k) as u32)
    };
    let sc = |v: &ScalarVec| v.iter().map(|x| x * &factor).collect::<ScalarVec>();
    Ok(WeakNormalCertificate {
        offsets: sc(&b),
        faces,
        vertices: us.iter().map(sc).collect(),
        betas: betas.iter().map(sc).collect(),
        scale_exponent: k,
        forced_zeros: Vec::new(),
    })
}
