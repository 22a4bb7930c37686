use serde_json::{json, Value};

use super::decomposition::{decomposition_width, BranchDecomposition};
use super::tangle::{verify_tangle, Tangle};
use crate::error::{Error, Result};
use crate::matroid::Matroid;

/// Bounds `order <= bw(M) <= width` from a tangle and a decomposition.
#[derive(Debug, Clone)]
pub struct WidthCertificate {
    pub upper: BranchDecomposition,
    pub width: usize,
    pub lower: Tangle,
    pub order: usize,
    pub exact: bool,
}

impl WidthCertificate {
    pub fn to_json(&self, m: &Matroid) -> Value {
        json!({
            "upper": { "decomposition": self.upper.to_json(m.ground()), "width": self.width },
            "lower": { "tangle": self.lower.to_json(m), "order": self.order },
            "exact": self.exact,
        })
    }
}

pub fn branch_width_certified(
    m: &Matroid,
    upper: &BranchDecomposition,
    lower: &Tangle,
) -> Result<WidthCertificate> {
    let width = decomposition_width(m, upper)?;
    let report = verify_tangle(m, lower)?;
    if let Some(v) = report.violation {
        return Err(Error::InvalidTangle(v.to_string()));
    }
    Ok(WidthCertificate {
        upper: upper.clone(),
        width,
        lower: lower.clone(),
        order: lower.order,
        exact: width == lower.order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branchwidth::{figure_two_tree, rank_bounded_family, TangleMembers};
    use crate::catalog;

    #[test]
    fn figure_two_certificate() {
        let m = catalog::fig2_m();
        let t = figure_two_tree(m.ground()).unwrap();
        let c =
            branch_width_certified(&m, &t, &Tangle::new(3, TangleMembers::SizeAtMost(1))).unwrap();
        assert!(c.exact);
        assert_eq!((c.width, c.order), (3, 3));
        let j = c.to_json(&m);
        assert_eq!(j["exact"], json!(true));
        assert_eq!(j["lower"]["order"], json!(3));
    }

    #[test]
    fn loose_bounds_are_not_exact() {
        let m = catalog::fig2_n();
        let t = figure_two_tree(m.ground()).unwrap();
        let c = branch_width_certified(&m, &t, &Tangle::new(3, rank_bounded_family(2))).unwrap();
        assert!(!c.exact);
        assert_eq!((c.width, c.order), (4, 3));
    }

    #[test]
    fn invalid_tangle_is_an_error() {
        let m = catalog::fig2_m();
        let t = figure_two_tree(m.ground()).unwrap();
        let bad = Tangle::new(5, TangleMembers::SizeAtMost(1));
        assert!(matches!(
            branch_width_certified(&m, &t, &bad),
            Err(Error::InvalidTangle(_))
        ));
    }
}
