#![allow(dead_code)]

use biracah::numcore::rational::{factorial, int, pochhammer, ratio, Rational};
use biracah::{BiParams, RacahContext};
use num_traits::{One, Zero};

pub fn triples() -> Vec<[Rational; 3]> {
    vec![
        [ratio(1, 2), ratio(1, 2), ratio(1, 2)],
        [ratio(1, 4), ratio(3, 4), int(1)],
        [ratio(2, 3), ratio(1, 3), ratio(5, 4)],
    ]
}

pub fn contexts(max_n: usize) -> Vec<RacahContext> {
    triples()
        .into_iter()
        .flat_map(|[a, b, c]| (0..=max_n).map(move |n| RacahContext::new(a.clone(), b.clone(), c.clone(), n).unwrap()))
        .collect()
}

pub fn label(ctx: &RacahContext) -> String {
    let e = ctx.echo();
    format!("({}, {}, {}; N={})", e.mu1, e.mu2, e.mu3, e.n)
}

fn mul_poly(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn eval(f: &[Rational], x: &Rational) -> Rational {
    f.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Monic orthogonal polynomials for the grid and weights of `p`, by
/// Gram-Schmidt on `1, x, x^2, ...`.
pub fn gram_schmidt(p: &BiParams) -> Vec<Vec<Rational>> {
    let nodes: Vec<Rational> = (0..=p.truncation()).map(|s| p.grid(s)).collect();
    let weights = p.weights().unwrap();
    let inner = |f: &[Rational], g: &[Rational]| -> Rational {
        nodes
            .iter()
            .zip(&weights)
            .fold(Rational::zero(), |acc, (x, w)| acc + w * eval(f, x) * eval(g, x))
    };
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    for n in 0..=p.truncation() {
        let mut v = vec![Rational::zero(); n + 1];
        v[n] = Rational::one();
        let mono = v.clone();
        for b in &basis {
            let c = inner(&mono, b) / inner(b, b);
            for (i, bi) in b.iter().enumerate() {
                v[i] -= &c * bi;
            }
        }
        basis.push(v);
    }
    basis
}

/// `P_n^{(a,b)}(x) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2)`.
pub fn jacobi_hypergeometric(n: u64, a: &Rational, b: &Rational, x: &Rational) -> Rational {
    let y = (Rational::one() - x) / int(2);
    let top = int(n as i64) + a + b + int(1);
    let lower = a + int(1);
    let mut sum = Rational::zero();
    for j in 0..=n {
        let term = pochhammer(&int(-(n as i64)), j) * pochhammer(&top, j) / (pochhammer(&lower, j) * Rational::from_integer(factorial(j)))
            * pow(&y, j);
        sum += term;
    }
    pochhammer(&lower, n) / Rational::from_integer(factorial(n)) * sum
}

fn pow(x: &Rational, k: u64) -> Rational {
    (0..k).fold(Rational::one(), |acc, _| acc * x)
}
