use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{check_budget, Result};
use crate::mask::SubsetMask;
use crate::matroid::Matroid;

pub const TUTTE_LIMIT: usize = 24;

/// `T(M;x,y) = sum_{i,j} c[i][j] x^i y^j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuttePolynomial {
    coeffs: Vec<Vec<BigUint>>,
}

impl TuttePolynomial {
    pub fn coefficient(&self, i: usize, j: usize) -> BigUint {
        self.coeffs
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_default()
    }

    /// Nonzero terms `(i, j, c)` ordered by `i`, then `j`.
    pub fn terms(&self) -> Vec<(usize, usize, BigUint)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn evaluate(&self, x: i64, y: i64) -> BigInt {
        let mut total = BigInt::zero();
        let mut xp = BigInt::one();
        for row in &self.coeffs {
            let mut yp = BigInt::one();
            for c in row {
                total += BigInt::from(c.clone()) * &xp * &yp;
                yp *= y;
            }
            xp *= x;
        }
        total
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .into_iter()
            .map(|(i, j, c)| json!({"x": i, "y": j, "c": c.to_string()}))
            .collect();
        json!({ "terms": terms })
    }
}

impl std::fmt::Display for TuttePolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (i, j, c)) in terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut parts = Vec::new();
            if !c.is_one() || (*i == 0 && *j == 0) {
                parts.push(c.to_string());
            }
            match i {
                0 => {}
                1 => parts.push("x".into()),
                _ => parts.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => parts.push("y".into()),
                _ => parts.push(format!("y^{j}")),
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

/// Direct corank-nullity sum over all subsets.
pub fn tutte_polynomial(m: &Matroid) -> Result<TuttePolynomial> {
    let n = m.len();
    check_budget("Tutte polynomial ground set", n, TUTTE_LIMIT)?;
    let r = m.rank_total();
    let width = n + 1;
    let oracle = m.oracle();
    // counts[a * width + b]: subsets with corank a and nullity b
    let counts = (0..1u64 << n)
        .into_par_iter()
        .fold(
            || vec![0u64; (r + 1) * width],
            |mut acc, x| {
                let x = SubsetMask(x);
                let rx = oracle.rank(x);
                acc[(r - rx) * width + (x.len() - rx)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; (r + 1) * width],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(u, v)| *u += v);
                a
            },
        );

    let binom = binomials(r.max(n) + 1);
    let mut coeffs = vec![vec![BigUint::zero(); width]; r + 1];
    for i in 0..=r {
        for j in 0..width {
            let mut c = BigInt::zero();
            for a in i..=r {
                for b in j..width {
                    let count = counts[a * width + b];
                    if count == 0 {
                        continue;
                    }
                    let mut term = BigInt::from(count) * &binom[a][i] * &binom[b][j];
                    if (a - i + b - j) % 2 == 1 {
                        term = -term;
                    }
                    c += term;
                }
            }
            debug_assert!(!c.is_negative());
            coeffs[i][j] = c.to_biguint().expect("Tutte coefficients are nonnegative");
        }
    }
    Ok(TuttePolynomial { coeffs })
}

fn binomials(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n + 1]; n + 1];
    for a in 0..=n {
        t[a][0] = BigInt::one();
        for b in 1..=a {
            t[a][b] = &t[a - 1][b - 1] + &t[a - 1][b];
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::matroid::GroundSet;

    fn bases_by_enumeration(m: &Matroid) -> u64 {
        let r = m.rank_total();
        // a set is a basis iff it has r elements and no element lies in the closure of the rest
        (0..1u64 << m.len())
            .map(SubsetMask)
            .filter(|b| b.len() == r)
            .filter(|b| b.iter().all(|e| !m.closure(b.without(e)).contains(e)))
            .filter(|b| m.closure(*b) == m.full())
            .count() as u64
    }

    #[test]
    fn loops_and_coloops() {
        let lp = Matroid::uniform(0, 1).unwrap();
        let cl = Matroid::uniform(1, 1).unwrap();
        assert_eq!(tutte_polynomial(&lp).unwrap().to_string(), "y");
        assert_eq!(tutte_polynomial(&cl).unwrap().to_string(), "x");
        let empty = Matroid::uniform(0, 0).unwrap();
        assert_eq!(tutte_polynomial(&empty).unwrap().to_string(), "1");
    }

    #[test]
    fn uniform_two_four() {
        let t = tutte_polynomial(&Matroid::uniform(2, 4).unwrap()).unwrap();
        assert_eq!(t.to_string(), "2*y + y^2 + 2*x + x^2");
    }

    #[test]
    fn evaluations_on_catalog() {
        for (name, m) in catalog::all() {
            let t = tutte_polynomial(&m).unwrap();
            assert_eq!(
                t.evaluate(1, 1),
                BigInt::from(bases_by_enumeration(&m)),
                "{name}"
            );
            assert_eq!(t.evaluate(2, 2), BigInt::from(1u64 << m.len()), "{name}");
            let td = tutte_polynomial(&m.dual()).unwrap();
            for i in 0..=m.len() {
                for j in 0..=m.len() {
                    assert_eq!(t.coefficient(i, j), td.coefficient(j, i), "{name}");
                }
            }
        }
    }

    #[test]
    fn figure_one_pair_snapshot() {
        let a = tutte_polynomial(&catalog::fig1_m()).unwrap();
        let b = tutte_polynomial(&catalog::fig1_n()).unwrap();
        assert_eq!(a, b);
        assert_eq!(
            a.to_string(),
            "4*y + 3*y^2 + y^3 + 4*x + 2*x*y + 3*x^2 + x^3"
        );
        assert_eq!(a.evaluate(1, 1), BigInt::from(18));
    }

    #[test]
    fn json_terms() {
        let t = tutte_polynomial(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert_eq!(
            t.to_json().to_string(),
            r#"{"terms":[{"x":0,"y":1,"c":"1"},{"x":1,"y":0,"c":"1"}]}"#
        );
    }

    #[test]
    fn budget() {
        let g = GroundSet::numbered(25).unwrap();
        let m = Matroid::new(
            g,
            vec![crate::CyclicFlat {
                set: SubsetMask::EMPTY,
                rank: 0,
            }],
        )
        .unwrap();
        assert!(matches!(
            tutte_polynomial(&m),
            Err(crate::Error::BudgetExceeded { .. })
        ));
    }
}
