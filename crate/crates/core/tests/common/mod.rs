//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use mamlab::fan::FanData;
use mamlab::io::Problem;
use mamlab::scalar::{QMatrix, Relation, Scalar, ScalarMatrix, SymbolTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture(name: &str) -> Problem {
    mamlab::fixtures::fixture(name).unwrap().problem().unwrap()
}

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A random LP with integer data: `(coefficient rows, relations, rhs)`.
pub struct RandomLp {
    pub vars: usize,
    pub rows: Vec<Vec<i64>>,
    pub rels: Vec<Relation>,
    pub rhs: Vec<i64>,
}

pub fn random_lp(rng: &mut ChaCha8Rng) -> RandomLp {
    let vars = rng.gen_range(1..=4);
    let cons = rng.gen_range(1..=8);
    let rows = (0..cons)
        .map(|_| (0..vars).map(|_| rng.gen_range(-3..=3)).collect())
        .collect();
    let rels = (0..cons)
        .map(|_| if rng.gen_bool(0.2) { Relation::Eq } else { Relation::Ge })
        .collect();
    let rhs = (0..cons).map(|_| rng.gen_range(-5..=5)).collect();
    RandomLp { vars, rows, rels, rhs }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn satisfies(lp: &RandomLp, x: &[BigRational]) -> bool {
    lp.rows.iter().zip(&lp.rels).zip(&lp.rhs).all(|((row, rel), b)| {
        let lhs: BigRational = row
            .iter()
            .zip(x)
            .map(|(a, v)| BigRational::from_integer((*a).into()) * v)
            .sum();
        let b = BigRational::from_integer((*b).into());
        match rel {
            Relation::Eq => lhs == b,
            Relation::Ge => lhs >= b,
        }
    })
}

/// Feasibility by enumeration: for every set of `r = rank` independent rows,
/// make them tight, take one particular solution and test it.
pub fn lp_oracle(lp: &RandomLp) -> bool {
    let all: Vec<Vec<BigRational>> = lp
        .rows
        .iter()
        .map(|r| r.iter().map(|&a| BigRational::from_integer(a.into())).collect())
        .collect();
    let r = QMatrix::from_rows(all.clone(), lp.vars).rank();
    if r == 0 {
        return satisfies(lp, &vec![q(0, 1); lp.vars]);
    }
    for s in subsets(lp.rows.len(), r) {
        let rows: Vec<Vec<BigRational>> = s.iter().map(|&i| all[i].clone()).collect();
        if QMatrix::from_rows(rows.clone(), lp.vars).rank() < r {
            continue;
        }
        // augmented system [A_S | b_S]; set non-pivot variables to zero
        let aug: Vec<Vec<BigRational>> = s
            .iter()
            .map(|&i| {
                let mut row = all[i].clone();
                row.push(BigRational::from_integer(lp.rhs[i].into()));
                row
            })
            .collect();
        let (red, piv) = QMatrix::from_rows(aug, lp.vars + 1).rref();
        let mut x = vec![q(0, 1); lp.vars];
        for (k, &c) in piv.iter().enumerate() {
            x[c] = red.get(k, lp.vars).clone();
        }
        if satisfies(lp, &x) {
            return true;
        }
    }
    false
}

pub fn to_problem(lp: &RandomLp) -> mamlab::scalar::LpProblem {
    let mut p = mamlab::scalar::LpProblem::new(lp.vars);
    for ((row, rel), b) in lp.rows.iter().zip(&lp.rels).zip(&lp.rhs) {
        p.push(
            row.iter().map(|&a| Scalar::from_int(a)).collect(),
            *rel,
            Scalar::from_int(*b),
        )
        .unwrap();
    }
    p
}

/// `rk Γ_I` by lattice search: integer `γ ∈ [−bound, bound]^m` with `Aγ` in the
/// span of `a_I`, counted modulo vectors supported on `I`. A float
/// least-squares residual filters candidates before the exact test.
pub fn gamma_rank_oracle(f: &FanData, face: &[usize], bound: i64) -> usize {
    let (m, n) = (f.m(), f.n());
    let table = f.table();
    let ell2 = m - n;
    let af: Vec<Vec<f64>> = (1..=m)
        .map(|i| f.vector(i).iter().map(|x| x.to_f64(table)).collect())
        .collect();
    let cols_i = f.columns(face);
    let base_rank = cols_i.rank();
    let free: Vec<usize> = (0..m).filter(|k| !face.contains(&(k + 1))).collect();
    let mut found: Vec<Vec<BigRational>> = Vec::new();
    let mut rank = 0;
    let mut g = vec![-bound; free.len()];
    if free.is_empty() {
        return 0;
    }
    loop {
        if g.iter().any(|&x| x != 0) {
            // Aγ for γ supported off I
            let v: Vec<f64> = (0..n)
                .map(|r| free.iter().zip(&g).map(|(&k, &c)| af[k][r] * c as f64).sum())
                .collect();
            if residual(&af, face, &v) < 1e-6 * (1.0 + v.iter().map(|x| x.abs()).sum::<f64>()) {
                let exact: Vec<Scalar> = (0..n)
                    .map(|r| {
                        free.iter().zip(&g).fold(Scalar::zero(), |acc, (&k, &c)| {
                            &acc + &(&Scalar::from_int(c) * &f.vector(k + 1)[r])
                        })
                    })
                    .collect();
                let mut cols: Vec<Vec<Scalar>> = face.iter().map(|&i| f.vector(i).clone()).collect();
                cols.push(exact);
                if ScalarMatrix::from_columns(&cols, n).rank() == base_rank {
                    let mut cand = found.clone();
                    cand.push(g.iter().map(|&c| BigRational::from_integer(c.into())).collect());
                    let r = QMatrix::from_rows(cand.clone(), free.len()).rank();
                    if r > rank {
                        rank = r;
                        found = cand;
                        if rank == ell2 {
                            return rank;
                        }
                    }
                }
            }
        }
        let mut k = 0;
        while k < g.len() && g[k] == bound {
            g[k] = -bound;
            k += 1;
        }
        if k == g.len() {
            return rank;
        }
        g[k] += 1;
    }
}

/// Distance from `v` to the span of the `a_i`, `i ∈ I`.
fn residual(af: &[Vec<f64>], face: &[usize], v: &[f64]) -> f64 {
    use nalgebra::{DMatrix, DVector};
    let n = v.len();
    let b = DVector::from_column_slice(v);
    if face.is_empty() || n == 0 {
        return b.norm();
    }
    let a = DMatrix::from_fn(n, face.len(), |r, c| af[face[c] - 1][r]);
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-12).expect("svd solve");
    (a * x - b).norm()
}

/// Random arithmetic expressions in the scalar grammar, together with an
/// independent evaluator.
#[derive(Clone, Debug)]
pub enum Expr {
    Lit(i64, i64),
    Sym(usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

pub const SYMBOLS: [&str; 3] = ["s", "t", "u"];

pub fn symbol_table() -> SymbolTable {
    let mut t = SymbolTable::new();
    for (k, name) in SYMBOLS.iter().enumerate() {
        let lo = q(10 + 7 * k as i64, 10) + q(1, 1 << 21);
        t.push_enclosure(name, lo.clone(), lo + q(1, 1 << 20)).unwrap();
    }
    t
}

pub fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) {
            Expr::Lit(rng.gen_range(-9..=9), rng.gen_range(1..=5))
        } else {
            Expr::Sym(rng.gen_range(0..SYMBOLS.len()))
        };
    }
    let a = Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => Expr::Add(a, Box::new(random_expr(rng, depth - 1))),
        1 => Expr::Sub(a, Box::new(random_expr(rng, depth - 1))),
        2 => Expr::Mul(a, Box::new(random_expr(rng, depth - 1))),
        3 => Expr::Div(a, Box::new(random_expr(rng, depth - 1))),
        _ => Expr::Neg(a),
    }
}

impl Expr {
    pub fn render(&self) -> String {
        match self {
            Expr::Lit(n, 1) => format!("({n})"),
            Expr::Lit(n, d) if *n < 0 => format!("(-{}/{d})", -n),
            Expr::Lit(n, d) => format!("{n}/{d}"),
            Expr::Sym(i) => SYMBOLS[*i].to_string(),
            Expr::Add(a, b) => format!("({} + {})", a.render(), b.render()),
            Expr::Sub(a, b) => format!("({} - {})", a.render(), b.render()),
            Expr::Mul(a, b) => format!("{} * {}", a.render(), b.render()),
            Expr::Div(a, b) => format!("{} / ({})", a.render(), b.render()),
            Expr::Neg(a) => format!("-({})", a.render()),
        }
    }

    /// Value at rational symbol values; `None` on division by zero.
    pub fn eval(&self, vals: &[BigRational]) -> Option<BigRational> {
        Some(match self {
            Expr::Lit(n, d) => q(*n, *d),
            Expr::Sym(i) => vals[*i].clone(),
            Expr::Add(a, b) => a.eval(vals)? + b.eval(vals)?,
            Expr::Sub(a, b) => a.eval(vals)? - b.eval(vals)?,
            Expr::Mul(a, b) => a.eval(vals)? * b.eval(vals)?,
            Expr::Div(a, b) => {
                let d = b.eval(vals)?;
                if d == q(0, 1) {
                    return None;
                }
                a.eval(vals)? / d
            }
            Expr::Neg(a) => -a.eval(vals)?,
        })
    }
}
