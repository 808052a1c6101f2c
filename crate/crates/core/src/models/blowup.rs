use num_traits::One;

use super::{DivisorClass, SplitCenter};
use crate::graded::{rat, Basis, CycleClass, Rational, TruncPoly};

/// The blow-up of `P^n` along a smooth center `Z`, with hyperplane class
/// `h` and exceptional class `e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlowupModel {
    center: SplitCenter,
    // ι_*(s_j(N) ∩ [Z]) for j = 0..=dim Z
    segre_terms: Vec<CycleClass>,
}

impl BlowupModel {
    pub fn new(center: SplitCenter) -> Self {
        let segre_terms = (0..=center.dim()).map(|j| center.segre_term_pushed(j)).collect();
        BlowupModel { center, segre_terms }
    }

    pub fn center(&self) -> &SplitCenter {
        &self.center
    }

    pub fn ambient_dim(&self) -> usize {
        self.center.ambient_dim()
    }

    /// `α h + β e`.
    pub fn divisor(alpha: i64, beta: i64) -> DivisorClass {
        DivisorClass(vec![alpha, beta])
    }

    /// `π_*(h^a e^b)`.
    ///
    /// For `b = 0` this is `[P^(n-a)]`; for `0 < b < codim Z` it vanishes;
    /// otherwise it is `h^a ∩ (-1)^(b-1) ι_*(s_(b-c)(N) ∩ [Z])`.
    pub fn pushforward_monomial(&self, a: u32, b: u32) -> CycleClass {
        let n = self.ambient_dim();
        let (a, b) = (a as usize, b as usize);
        let zero = || CycleClass::zero(&Basis::projective(n));
        if b == 0 {
            return if a > n { zero() } else { CycleClass::projective(n, [(n - a, 1)]) };
        }
        let c = self.center.codim();
        if b < c || b - c > self.center.dim() {
            return zero();
        }
        let sign = if b % 2 == 1 { Rational::one() } else { -Rational::one() };
        let mut h_power = vec![rat(0); a + 1];
        h_power[a] = sign;
        self.segre_terms[b - c].cap_projective(&TruncPoly::new(h_power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Model;

    fn p(n: usize, terms: &[(usize, i64)]) -> CycleClass {
        CycleClass::projective(n, terms.iter().copied())
    }

    #[test]
    fn quadric_exceptional_powers() {
        let m = BlowupModel::new(SplitCenter::quadric_surface(5).unwrap());
        assert_eq!(m.pushforward_monomial(0, 3), p(5, &[(2, 2)]));
        assert_eq!(m.pushforward_monomial(0, 4), p(5, &[(1, 8)]));
        assert_eq!(m.pushforward_monomial(0, 5), p(5, &[(0, 22)]));
        assert!(m.pushforward_monomial(0, 1).is_zero());
        assert!(m.pushforward_monomial(0, 2).is_zero());
        assert!(m.pushforward_monomial(0, 6).is_zero());
        assert_eq!(m.pushforward_monomial(5, 0), p(5, &[(0, 1)]));
        assert_eq!(m.pushforward_monomial(1, 3), p(5, &[(1, 2)]));
    }

    #[test]
    fn point_in_the_plane() {
        let m = BlowupModel::new(SplitCenter::linear(2, 0).unwrap());
        assert_eq!(m.pushforward_monomial(0, 2), p(2, &[(0, -1)]));
        assert!(m.pushforward_monomial(0, 1).is_zero());
        assert_eq!(m.pushforward_monomial(2, 0), p(2, &[(0, 1)]));
    }

    #[test]
    fn divisor_power_series_examples() {
        let q = Model::Blowup(BlowupModel::new(SplitCenter::quadric_surface(5).unwrap()));
        let d = BlowupModel::divisor(2, -1);
        assert_eq!(
            q.pushforward_divisor_power_series(&d).unwrap(),
            p(5, &[(4, 2), (3, -4), (2, 6), (1, -8), (0, 10)])
        );
        let line = Model::Blowup(BlowupModel::new(SplitCenter::linear(3, 1).unwrap()));
        assert_eq!(line.pushforward_divisor_power_series(&d).unwrap(), p(3, &[(2, 2), (1, -3), (0, 4)]));
        let pt = Model::Blowup(BlowupModel::new(SplitCenter::linear(2, 0).unwrap()));
        assert_eq!(pt.pushforward_divisor_power_series(&d).unwrap(), p(2, &[(1, 2), (0, -3)]));
    }

    #[test]
    fn exceptional_divisor_alone_gives_segre_class_of_center() {
        for n in 1..=6 {
            for m in 0..n {
                let z = SplitCenter::linear(n, m).unwrap();
                let model = Model::Blowup(BlowupModel::new(z.clone()));
                let pushed = model.pushforward_divisor_power_series(&BlowupModel::divisor(0, 1)).unwrap();
                assert_eq!(pushed, z.segre_class(), "P^{m} in P^{n}");
            }
        }
    }
}
