use crate::family::{characteristic_vectors, SetFamily};
use crate::gf::{enumerate_span, GfError, PrimeModulus, Subspace, DEFAULT_SPAN_CAP};

/// Dimension of the GF(2) span of the characteristic vectors.
pub fn closure_dim(family: &SetFamily) -> usize {
    let vs = characteristic_vectors(family, PrimeModulus::TWO);
    Subspace::span(PrimeModulus::TWO, family.n(), &vs)
        .expect("characteristic vectors share the ground set")
        .dim()
}

/// Every subset whose characteristic vector lies in the GF(2) span of the family.
/// Has `2^rank` members; errors with `CapExceeded` above `2^26`.
pub fn linear_closure(family: &SetFamily) -> Result<SetFamily, GfError> {
    let vs = characteristic_vectors(family, PrimeModulus::TWO);
    let span = Subspace::span(PrimeModulus::TWO, family.n(), &vs)?;
    let sets = enumerate_span(&span, DEFAULT_SPAN_CAP)?
        .iter()
        .map(|v| v.support())
        .collect();
    Ok(SetFamily::new(family.ground(), sets).expect("span vectors are distinct"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_blocks() {
        let f = SetFamily::from_lists(4, &[vec![1, 2], vec![3, 4]]).unwrap();
        let c = linear_closure(&f).unwrap();
        assert_eq!(c.to_lists(), vec![vec![], vec![1, 2], vec![3, 4], vec![1, 2, 3, 4]]);
        assert!(f.is_subfamily_of(&c));
        assert_eq!(linear_closure(&c).unwrap(), c);
        assert_eq!(closure_dim(&f), 2);
    }

    #[test]
    fn cap_is_enforced() {
        let singles: Vec<Vec<usize>> = (1..=27).map(|i| vec![i]).collect();
        let f = SetFamily::from_lists(27, &singles).unwrap();
        assert!(matches!(linear_closure(&f), Err(GfError::CapExceeded { .. })));
    }
}
