use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graded::{cap_hyperplane_polynomial, Basis, BasisElement, CycleClass, HAction, TruncPoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CenterKind {
    /// A linear subspace `P^m`.
    Linear(usize),
    /// A smooth quadric surface spanning a `P^3`.
    QuadricSurface,
    /// A smooth complete intersection of hypersurfaces of the given degrees.
    CompleteIntersection(Vec<i64>),
    Custom,
}

/// A smooth blow-up center `Z ⊂ P^n` with split normal bundle
/// `N = ⊕ O(d_i)|_Z`, together with enough Chow data to push classes
/// `p(H) ∩ [Z]` forward to `P^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitCenter {
    ambient_dim: usize,
    dim: usize,
    normal_degrees: Vec<i64>,
    basis: Arc<Basis>,
    fundamental: CycleClass,
    h_action: HAction,
    pushforward: Vec<CycleClass>,
    kind: CenterKind,
}

fn el(label: impl Into<String>, dim: usize) -> BasisElement {
    BasisElement { label: label.into(), dim }
}

impl SplitCenter {
    /// Validates and assembles center data.
    ///
    /// `pushforward[i]` is the image of basis element `i` in `A_*(P^n)`.
    pub fn custom(
        ambient_dim: usize,
        normal_degrees: Vec<i64>,
        basis: Arc<Basis>,
        fundamental: CycleClass,
        h_action: HAction,
        pushforward: Vec<CycleClass>,
    ) -> Result<Self> {
        Self::assemble(ambient_dim, normal_degrees, basis, fundamental, h_action, pushforward, CenterKind::Custom)
    }

    fn assemble(
        ambient_dim: usize,
        normal_degrees: Vec<i64>,
        basis: Arc<Basis>,
        fundamental: CycleClass,
        h_action: HAction,
        pushforward: Vec<CycleClass>,
        kind: CenterKind,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCenter(msg));
        let dim = basis.ambient_dim();
        if dim >= ambient_dim {
            return bad(format!("center of dimension {dim} is not a proper subvariety of P^{ambient_dim}"));
        }
        if normal_degrees.len() != ambient_dim - dim {
            return bad(format!(
                "{} normal degrees for codimension {}",
                normal_degrees.len(),
                ambient_dim - dim
            ));
        }
        if fundamental.basis() != &basis || h_action.basis() != &basis {
            return bad("fundamental class and hyperplane action must live on the center basis".into());
        }
        if fundamental.is_zero() || fundamental.terms().any(|(i, _)| basis.dim(i) != dim) {
            return bad(format!("fundamental class {fundamental} is not pure of dimension {dim}"));
        }
        let mut power = fundamental.clone();
        for _ in 0..=dim {
            power = h_action.apply(&power)?;
        }
        if !power.is_zero() {
            return bad(format!("h^{} does not annihilate the fundamental class", dim + 1));
        }
        if pushforward.len() != basis.len() {
            return bad("one push-forward image per basis element required".into());
        }
        let target = Basis::projective(ambient_dim);
        for (i, img) in pushforward.iter().enumerate() {
            let label = &basis.elements()[i].label;
            if img.basis() != &target {
                return bad(format!("push-forward of {label} is not a class on P^{ambient_dim}"));
            }
            if img.terms().any(|(k, _)| k != basis.dim(i)) {
                return bad(format!("push-forward of {label} does not preserve dimension"));
            }
            if basis.dim(i) == 0 && *img != CycleClass::projective(ambient_dim, [(0, 1)]) {
                return bad(format!("point class {label} must push forward to [P^0]"));
            }
        }
        Ok(SplitCenter { ambient_dim, dim, normal_degrees, basis, fundamental, h_action, pushforward, kind })
    }

    /// A linear `P^m ⊂ P^n`; normal bundle `O(1)^(n-m)`.
    pub fn linear(n: usize, m: usize) -> Result<Self> {
        if m >= n {
            return Err(Error::InvalidCenter(format!("linear center P^{m} must be a proper subspace of P^{n}")));
        }
        let basis = Basis::new(format!("P^{m} in P^{n}"), (0..=m).map(|k| el(format!("[P^{k}]"), k)).collect(), m)?;
        let images = (0..=m)
            .map(|k| if k == 0 { CycleClass::zero(&basis) } else { CycleClass::element(&basis, k - 1) })
            .collect();
        let h_action = HAction::new(&basis, images)?;
        let push = (0..=m).map(|k| CycleClass::projective(n, [(k, 1)])).collect();
        let fundamental = CycleClass::element(&basis, m);
        Self::assemble(n, vec![1; n - m], basis, fundamental, h_action, push, CenterKind::Linear(m))
    }

    /// A smooth quadric surface `Q ≅ P^1 × P^1` spanning a `P^3 ⊂ P^n`, `n >= 4`;
    /// normal bundle `O(2) ⊕ O(1)^(n-3)`.
    pub fn quadric_surface(n: usize) -> Result<Self> {
        if n < 4 {
            return Err(Error::InvalidCenter(format!("quadric surface center needs n >= 4, got {n}")));
        }
        let basis = Basis::new(
            format!("Q in P^{n}"),
            vec![el("[Q]", 2), el("l1", 1), el("l2", 1), el("[pt]", 0)],
            2,
        )?;
        let e = |i| CycleClass::element(&basis, i);
        let h_action = HAction::new(&basis, vec![&e(1) + &e(2), e(3), e(3), CycleClass::zero(&basis)])?;
        let push = vec![
            CycleClass::projective(n, [(2, 2)]),
            CycleClass::projective(n, [(1, 1)]),
            CycleClass::projective(n, [(1, 1)]),
            CycleClass::projective(n, [(0, 1)]),
        ];
        let mut normal = vec![2];
        normal.extend(std::iter::repeat_n(1, n - 3));
        let fundamental = e(0);
        Self::assemble(n, normal, basis, fundamental, h_action, push, CenterKind::QuadricSurface)
    }

    /// A smooth complete intersection of hypersurfaces of the given degrees.
    ///
    /// Only classes of the form `p(H) ∩ [Z]` are modelled: the basis is
    /// `H^j ∩ [Z]` for `j < dim Z` plus the point class.
    pub fn complete_intersection(n: usize, degrees: &[i64]) -> Result<Self> {
        if let Some(&d) = degrees.iter().find(|&&d| d < 1) {
            return Err(Error::InvalidDegree(d));
        }
        let c = degrees.len();
        if c == 0 || c > n {
            return Err(Error::InvalidCenter(format!("{c} equations do not cut a proper nonempty subvariety of P^{n}")));
        }
        if degrees.iter().all(|&d| d == 1) {
            return Self::linear(n, n - c);
        }
        let m = n - c;
        let deg: i64 = degrees.iter().product();
        let name = format!("CI{degrees:?} in P^{n}");
        let (basis, fundamental, h_action, push) = if m == 0 {
            let basis = Basis::new(name, vec![el("[pt]", 0)], 0)?;
            let h = HAction::new(&basis, vec![CycleClass::zero(&basis)])?;
            let fund = CycleClass::element(&basis, 0).scale_int(deg);
            (basis, fund, h, vec![CycleClass::projective(n, [(0, 1)])])
        } else {
            // index j holds H^j ∩ [Z] (dimension m - j) for j < m; index m is the point.
            let mut elements: Vec<BasisElement> =
                (0..m).map(|j| el(if j == 0 { "[Z]".to_string() } else { format!("h^{j}[Z]") }, m - j)).collect();
            elements.push(el("[pt]", 0));
            let basis = Basis::new(name, elements, m)?;
            let images = (0..=m)
                .map(|j| match j {
                    j if j + 1 < m => CycleClass::element(&basis, j + 1),
                    j if j + 1 == m => CycleClass::element(&basis, m).scale_int(deg),
                    _ => CycleClass::zero(&basis),
                })
                .collect();
            let h = HAction::new(&basis, images)?;
            let push = (0..=m)
                .map(|j| if j < m { CycleClass::projective(n, [(m - j, deg)]) } else { CycleClass::projective(n, [(0, 1)]) })
                .collect();
            (basis.clone(), CycleClass::element(&basis, 0), h, push)
        };
        Self::assemble(n, degrees.to_vec(), basis, fundamental, h_action, push, CenterKind::CompleteIntersection(degrees.to_vec()))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn codim(&self) -> usize {
        self.ambient_dim - self.dim
    }

    pub fn normal_degrees(&self) -> &[i64] {
        &self.normal_degrees
    }

    pub fn basis(&self) -> &Arc<Basis> {
        &self.basis
    }

    pub fn fundamental(&self) -> &CycleClass {
        &self.fundamental
    }

    pub fn h_action(&self) -> &HAction {
        &self.h_action
    }

    pub fn kind(&self) -> &CenterKind {
        &self.kind
    }

    /// `c(N) = Π (1 + d_i H)`, truncated at `dim Z`.
    pub fn normal_chern(&self) -> TruncPoly {
        self.normal_degrees
            .iter()
            .fold(TruncPoly::one(), |acc, &d| acc.mul_trunc(&TruncPoly::one_plus_pow(d, 1, self.dim), self.dim))
    }

    /// `s(N) = Π (1 + d_i H)^(-1)`, truncated at `dim Z`.
    pub fn normal_segre(&self) -> TruncPoly {
        self.normal_degrees
            .iter()
            .fold(TruncPoly::one(), |acc, &d| acc.mul_trunc(&TruncPoly::one_plus_pow(d, -1, self.dim), self.dim))
    }

    /// `p(H) ∩ [Z]` on the center.
    pub fn cap_fundamental(&self, p: &TruncPoly) -> CycleClass {
        cap_hyperplane_polynomial(p, &self.fundamental, &self.h_action).expect("center data validated at construction")
    }

    /// `ι_*` into `A_*(P^n)`.
    pub fn push(&self, a: &CycleClass) -> CycleClass {
        assert_eq!(a.basis(), &self.basis, "class does not live on this center");
        let mut out = CycleClass::zero(&Basis::projective(self.ambient_dim));
        for (i, c) in a.terms() {
            out = &out + &self.pushforward[i].scale(c);
        }
        out
    }

    /// `ι_*(s_j(N) ∩ [Z])`, the degree-`j` normal Segre term pushed to `P^n`.
    pub fn segre_term_pushed(&self, j: usize) -> CycleClass {
        if j > self.dim {
            return CycleClass::zero(&Basis::projective(self.ambient_dim));
        }
        let mut mono = vec![num_traits::Zero::zero(); j + 1];
        mono[j] = self.normal_segre().coeff(j);
        self.push(&self.cap_fundamental(&TruncPoly::new(mono)))
    }

    /// The Segre class `s(Z, P^n) = ι_*(s(N) ∩ [Z])`.
    pub fn segre_class(&self) -> CycleClass {
        self.push(&self.cap_fundamental(&self.normal_segre()))
    }

    /// `ι_*(c(TZ) ∩ [Z])` via adjunction `c(TZ) = (1+H)^(n+1) / c(N)`.
    pub fn chern_class_pushed(&self) -> CycleClass {
        let tangent = TruncPoly::one_plus_pow(1, self.ambient_dim as i64 + 1, self.dim)
            .mul_trunc(&self.normal_segre(), self.dim);
        self.push(&self.cap_fundamental(&tangent))
    }
}
