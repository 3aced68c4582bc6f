//! Mixed super vector spaces `(V, V_R, V_C)`.

use std::fmt;

use super::scalar::GQ;
use super::subspace::{Field, GradedDim, GradedSubspace};
use super::GsError;

/// Real-basis description of a mixed structure on `V = C^{ambient}`.
///
/// `realgen` spans `V_R` over ℝ, `cplxgen` spans `V_C` over ℂ. Constructed
/// through [`MixedData::new`], the odd coordinates are always part of both
/// (every odd vector is real and complex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedData {
    ambient: GradedDim,
    realgen: Vec<Vec<GQ>>,
    cplxgen: Vec<Vec<GQ>>,
}

impl MixedData {
    /// Mixed data from even generators; the odd part is filled in as `V_1`.
    pub fn new(
        ambient: GradedDim,
        even_realgen: Vec<Vec<GQ>>,
        even_cplxgen: Vec<Vec<GQ>>,
    ) -> Result<Self, GsError> {
        let n = ambient.total();
        for v in even_realgen.iter().chain(&even_cplxgen) {
            if v.len() != n {
                return Err(GsError::Shape(format!("generator of length {} in ambient {ambient}", v.len())));
            }
            if v[ambient.even..].iter().any(|x| !x.is_zero()) {
                return Err(GsError::Parity("mixed-data generators must be even; the odd part is implicit".into()));
            }
        }
        let mut realgen = even_realgen;
        let mut cplxgen = even_cplxgen;
        for k in ambient.even..n {
            let mut e = vec![GQ::zero(); n];
            e[k] = GQ::one();
            let mut ie = vec![GQ::zero(); n];
            ie[k] = GQ::i();
            realgen.push(e.clone());
            realgen.push(ie);
            cplxgen.push(e);
        }
        Ok(Self { ambient, realgen, cplxgen })
    }

    /// A real structure `(V, V_R, 0)`: arbitrary real generators, no
    /// complex part and no implicit odd part.
    pub fn real_structure(ambient: GradedDim, realgen: Vec<Vec<GQ>>) -> Result<Self, GsError> {
        if realgen.iter().any(|v| v.len() != ambient.total()) {
            return Err(GsError::Shape("generator length does not match ambient".into()));
        }
        Ok(Self { ambient, realgen, cplxgen: Vec::new() })
    }

    /// Model space `(C^{n1+n2|odd}, R^{n1} x C^{n2} ⊕ V_1, C^{n2} ⊕ V_1)`.
    pub fn model(n1: usize, n2: usize, odd: usize) -> Self {
        let ambient = GradedDim::new(n1 + n2, odd);
        let n = ambient.total();
        let unit = |k: usize, s: GQ| {
            let mut e = vec![GQ::zero(); n];
            e[k] = s;
            e
        };
        let mut realgen = Vec::new();
        let mut cplxgen = Vec::new();
        for k in 0..n1 {
            realgen.push(unit(k, GQ::one()));
        }
        for k in n1..n1 + n2 {
            realgen.push(unit(k, GQ::one()));
            realgen.push(unit(k, GQ::i()));
            cplxgen.push(unit(k, GQ::one()));
        }
        Self::new(ambient, realgen, cplxgen).expect("model generators are well formed")
    }

    pub fn ambient(&self) -> GradedDim {
        self.ambient
    }

    pub fn realgen(&self) -> &[Vec<GQ>] {
        &self.realgen
    }

    pub fn cplxgen(&self) -> &[Vec<GQ>] {
        &self.cplxgen
    }

    /// `V_R` as a real subspace in realified coordinates.
    pub fn real_part(&self) -> Result<GradedSubspace, GsError> {
        GradedSubspace::span(self.ambient, Field::Real, self.realgen.iter().cloned())
    }

    /// `V_C` as a complex subspace.
    pub fn complex_part(&self) -> Result<GradedSubspace, GsError> {
        GradedSubspace::span(self.ambient, Field::Complex, self.cplxgen.iter().cloned())
    }

    /// Restriction to the even part, as purely even mixed data on `C^{even|0}`.
    pub fn even_part(&self) -> Result<(GradedSubspace, GradedSubspace), GsError> {
        let e = self.ambient.even;
        let amb = GradedDim::new(e, 0);
        let vr = self.real_part()?;
        let vc = self.complex_part()?;
        let real = GradedSubspace::from_coords(amb, Field::Real, vr.basis_even().iter().map(|v| v[..2 * e].to_vec()))?;
        let cplx = GradedSubspace::from_coords(amb, Field::Complex, vc.basis_even().iter().map(|v| v[..e].to_vec()))?;
        Ok((real, cplx))
    }
}

/// The first condition that fails in [`check_mixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedViolation {
    /// `V_C ⊄ V_R`.
    NotContained,
    /// `V_C` is not closed under multiplication by `i`.
    NotIInvariant,
    /// `V_R + i V_R ≠ V`; real dimensions of the sum and of `V`.
    SpanDeficient { real_dim: usize, required: usize },
    /// `V_R ∩ i V_R ≠ V_C`; complex dimensions of both sides.
    IntersectionMismatch { intersection: GradedDim, complex_part: GradedDim },
}

impl fmt::Display for MixedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixedViolation::NotContained => write!(f, "V_C is not contained in V_R"),
            MixedViolation::NotIInvariant => write!(f, "V_C is not i-invariant"),
            MixedViolation::SpanDeficient { real_dim, required } => {
                write!(f, "V_R + iV_R has real dimension {real_dim}, V needs {required}")
            }
            MixedViolation::IntersectionMismatch { intersection, complex_part } => write!(
                f,
                "V_R ∩ iV_R has dimension {intersection}, V_C has {complex_part}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MixedVerdict {
    Valid,
    Violation(MixedViolation),
}

impl MixedVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, MixedVerdict::Valid)
    }
}

/// Decides whether `ℂ ⊗ V_R / V_C → V / V_C` is an isomorphism, via the
/// equivalent conditions `V_R + iV_R = V` and `V_R ∩ iV_R = V_C`.
pub fn check_mixed(d: &MixedData) -> Result<MixedVerdict, GsError> {
    let vr = d.real_part()?;
    let vc = d.complex_part()?;
    check_mixed_subspaces(&vr, &vc)
}

/// [`check_mixed`] on subspaces: `vr` real (realified), `vc` complex.
pub fn check_mixed_subspaces(vr: &GradedSubspace, vc: &GradedSubspace) -> Result<MixedVerdict, GsError> {
    if vr.field() != Field::Real || vc.field() != Field::Complex {
        return Err(GsError::FieldMismatch("expected (real, complex) subspaces".into()));
    }
    let vc_real = vc.realify()?;
    if !vc_real.is_subspace_of(vr)? {
        return Ok(MixedVerdict::Violation(MixedViolation::NotContained));
    }
    if vc_real.mul_i()? != vc_real {
        return Ok(MixedVerdict::Violation(MixedViolation::NotIInvariant));
    }
    let ivr = vr.mul_i()?;
    let span = vr.sum(&ivr)?;
    let required = 2 * vr.ambient().total();
    if span.dim().total() != required {
        return Ok(MixedVerdict::Violation(MixedViolation::SpanDeficient {
            real_dim: span.dim().total(),
            required,
        }));
    }
    let inter = vr.intersect(&ivr)?;
    if inter != vc_real {
        let half = |d: GradedDim| GradedDim::new(d.even / 2, d.odd / 2);
        return Ok(MixedVerdict::Violation(MixedViolation::IntersectionMismatch {
            intersection: half(inter.dim()),
            complex_part: vc.dim(),
        }));
    }
    Ok(MixedVerdict::Valid)
}

/// `V_R ∩ i V_R`, the complex part determined by a real subspace.
pub fn induced_complex_part(vr: &GradedSubspace) -> Result<GradedSubspace, GsError> {
    vr.induced_complex_part()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn model_spaces_are_mixed() {
        for (n1, n2) in [(1, 0), (0, 1), (2, 1)] {
            for odd in [0, 2] {
                let d = MixedData::model(n1, n2, odd);
                assert_eq!(check_mixed(&d).unwrap(), MixedVerdict::Valid, "({n1},{n2}|{odd})");
            }
        }
    }

    #[test]
    fn complex_super_vector_space_is_mixed() {
        let d = MixedData::model(0, 2, 1);
        assert!(check_mixed(&d).unwrap().is_valid());
        assert_eq!(d.complex_part().unwrap().dim(), GradedDim::new(2, 1));
    }

    #[test]
    fn totally_real_span_too_small() {
        let amb = GradedDim::new(2, 0);
        let e = |k: usize| {
            let mut v = vec![GQ::zero(); 2];
            v[k] = GQ::one();
            v
        };
        let half = MixedData::new(amb, vec![e(0)], vec![]).unwrap();
        assert!(matches!(
            check_mixed(&half).unwrap(),
            MixedVerdict::Violation(MixedViolation::SpanDeficient { real_dim: 2, required: 4 })
        ));
    }

    #[test]
    fn complex_part_must_be_inside_real_part() {
        let amb = GradedDim::new(1, 0);
        let d = MixedData::new(amb, vec![vec![GQ::one()]], vec![vec![GQ::one()]]).unwrap();
        assert_eq!(
            check_mixed(&d).unwrap(),
            MixedVerdict::Violation(MixedViolation::NotContained)
        );
    }

    #[test]
    fn complex_part_too_small() {
        // V_R = C, V_C = 0: span fine, intersection too big
        let amb = GradedDim::new(1, 0);
        let d = MixedData::new(amb, vec![vec![GQ::one()], vec![GQ::i()]], vec![]).unwrap();
        assert!(matches!(
            check_mixed(&d).unwrap(),
            MixedVerdict::Violation(MixedViolation::IntersectionMismatch { .. })
        ));
    }

    #[test]
    fn induced_complex_part_of_model() {
        let d = MixedData::model(1, 1, 0);
        let c = induced_complex_part(&d.real_part().unwrap()).unwrap();
        assert_eq!(c, d.complex_part().unwrap());
    }

    #[test]
    fn odd_generators_rejected() {
        let amb = GradedDim::new(1, 1);
        assert!(MixedData::new(amb, vec![vec![GQ::zero(), GQ::one()]], vec![]).is_err());
    }
}
