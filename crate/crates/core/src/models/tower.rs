use super::DivisorClass;
use crate::error::{Error, Result};
use crate::graded::{Basis, CycleClass};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum YMode {
    /// `Y` is the common point `p`.
    Point,
    /// `Y` is empty.
    Empty,
}

/// `m` distinct lines through a point `p ∈ P^3`, resolved by blowing up `p`
/// (exceptional class `ē0`, pulled back) and then the pairwise disjoint
/// strict transforms of the lines (exceptional classes `e1..em`).
///
/// The strict transform of each line meets `E0` once and has normal bundle
/// `O ⊕ O`; these facts, with `E0^3 = 1`, determine every push-forward.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerP3Lines {
    num_lines: usize,
    y_mode: YMode,
}

impl TowerP3Lines {
    pub fn new(num_lines: usize, y_mode: YMode) -> Result<Self> {
        if num_lines == 0 {
            return Err(Error::NoComponents);
        }
        Ok(TowerP3Lines { num_lines, y_mode })
    }

    pub fn num_lines(&self) -> usize {
        self.num_lines
    }

    pub fn y_mode(&self) -> YMode {
        self.y_mode
    }

    pub fn variables(&self) -> Vec<String> {
        std::iter::once("E0".to_string()).chain((1..=self.num_lines).map(|i| format!("e{i}"))).collect()
    }

    /// `π_*(ē0^a · e_i^b)`; `line = None` means `b = 0`.
    pub fn pushforward_monomial_tower(&self, a: u32, line: Option<usize>, b: u32) -> CycleClass {
        let p = |terms: &[(usize, i64)]| CycleClass::projective(3, terms.iter().copied());
        match (line, a, b) {
            (_, 0, 0) => p(&[(3, 1)]),
            (_, 3, 0) => p(&[(0, 1)]),
            (_, _, 0) => p(&[]),
            (Some(_), 0, 2) => p(&[(1, -1)]),
            (Some(_), 1, 2) => p(&[(0, -1)]),
            _ => p(&[]),
        }
    }

    /// Push-forward of a monomial given as an exponent vector over
    /// `(ē0, e1, ..., em)`; products of distinct `e_i` vanish.
    pub fn pushforward_exponents(&self, m: &[u32]) -> CycleClass {
        assert_eq!(m.len(), self.num_lines + 1, "exponent vector length");
        let mut lines = m[1..].iter().enumerate().filter(|(_, &b)| b > 0);
        match (lines.next(), lines.next()) {
            (None, _) => self.pushforward_monomial_tower(m[0], None, 0),
            (Some((i, &b)), None) => self.pushforward_monomial_tower(m[0], Some(i + 1), b),
            _ => CycleClass::zero(&Basis::projective(3)),
        }
    }

    fn generator(&self, idx: usize) -> DivisorClass {
        let mut d = DivisorClass::zero(self.num_lines + 1);
        d.0[idx] = 1;
        d
    }

    /// `Ȳ`: `ē0` for a point, `0` for empty `Y`.
    pub fn y_bar(&self) -> DivisorClass {
        match self.y_mode {
            YMode::Point => self.generator(0),
            YMode::Empty => DivisorClass::zero(self.num_lines + 1),
        }
    }

    /// Residual divisor of line `i` (1-based): `X̄_i = Ȳ + R_i` with `X̄_i = ē0 + e_i`.
    pub fn residual(&self, line: usize) -> Result<DivisorClass> {
        if line == 0 || line > self.num_lines {
            return Err(Error::InvalidParameters(format!("line {line} not in 1..={}", self.num_lines)));
        }
        Ok(match self.y_mode {
            YMode::Point => self.generator(line),
            YMode::Empty => &self.generator(0) + &self.generator(line),
        })
    }

    /// `Σ_{i∈subset} R_i + Ȳ`.
    pub fn union_divisor_tower(&self, subset: &[usize]) -> Result<DivisorClass> {
        if subset.is_empty() {
            return Err(Error::NoComponents);
        }
        subset.iter().try_fold(self.y_bar(), |acc, &i| Ok(&acc + &self.residual(i)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::Model;

    fn p(terms: &[(usize, i64)]) -> CycleClass {
        CycleClass::projective(3, terms.iter().copied())
    }

    #[test]
    fn rule_table() {
        let t = TowerP3Lines::new(3, YMode::Point).unwrap();
        assert_eq!(t.pushforward_monomial_tower(3, None, 0), p(&[(0, 1)]));
        assert_eq!(t.pushforward_monomial_tower(0, Some(1), 2), p(&[(1, -1)]));
        assert_eq!(t.pushforward_monomial_tower(1, Some(2), 2), p(&[(0, -1)]));
        assert!(t.pushforward_monomial_tower(1, None, 0).is_zero());
        assert!(t.pushforward_monomial_tower(2, None, 0).is_zero());
        assert!(t.pushforward_monomial_tower(0, Some(1), 3).is_zero());
        assert!(t.pushforward_exponents(&[0, 1, 1, 0]).is_zero());
    }

    #[test]
    fn union_divisors_and_their_classes() {
        let point = TowerP3Lines::new(3, YMode::Point).unwrap();
        let d = point.union_divisor_tower(&[1, 2]).unwrap();
        assert_eq!(d, DivisorClass(vec![1, 1, 1, 0]));
        let model = Model::Tower(point.clone());
        assert_eq!(model.pushforward_divisor_power_series(&d).unwrap(), p(&[(1, 2), (0, -5)]));
        let d3 = point.union_divisor_tower(&[1, 2, 3]).unwrap();
        assert_eq!(model.pushforward_divisor_power_series(&d3).unwrap(), p(&[(1, 3), (0, -8)]));

        let empty = TowerP3Lines::new(2, YMode::Empty).unwrap();
        let d = empty.union_divisor_tower(&[1, 2]).unwrap();
        assert_eq!(d, DivisorClass(vec![2, 1, 1]));
        assert_eq!(Model::Tower(empty).pushforward_divisor_power_series(&d).unwrap(), p(&[(1, 2), (0, -4)]));
    }

    #[test]
    fn errors() {
        let t = TowerP3Lines::new(2, YMode::Point).unwrap();
        assert_eq!(t.union_divisor_tower(&[]), Err(Error::NoComponents));
        assert!(t.union_divisor_tower(&[3]).is_err());
        assert!(TowerP3Lines::new(0, YMode::Point).is_err());
    }

    #[test]
    fn point_alone_has_segre_class_of_a_point() {
        let t = Model::Tower(TowerP3Lines::new(2, YMode::Point).unwrap());
        let y = DivisorClass(vec![1, 0, 0]);
        assert_eq!(t.pushforward_divisor_power_series(&y).unwrap(), p(&[(0, 1)]));
    }
}
