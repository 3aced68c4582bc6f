//! Graded dimensions and canonical graded subspaces.

use std::fmt;
use std::ops::Add;

use super::linalg::{self, SparseVec};
use super::scalar::GQ;
use super::GsError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: usize) -> Self {
        if b % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn bit(self) -> usize {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }

    pub fn flip(self) -> Self {
        Parity::from_bit(self.bit() + 1)
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    /// Koszul sign `(-1)^{|a||b|}`.
    pub fn koszul(a: Parity, b: Parity) -> i64 {
        if a.is_odd() && b.is_odd() {
            -1
        } else {
            1
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl Add for Parity {
    type Output = Parity;
    fn add(self, rhs: Parity) -> Parity {
        Parity::from_bit(self.bit() + rhs.bit())
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Dimension `even|odd` of a super vector space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GradedDim {
    pub even: usize,
    pub odd: usize,
}

impl GradedDim {
    pub const ZERO: GradedDim = GradedDim { even: 0, odd: 0 };

    pub fn new(even: usize, odd: usize) -> Self {
        Self { even, odd }
    }

    pub fn total(&self) -> usize {
        self.even + self.odd
    }

    pub fn get(&self, p: Parity) -> usize {
        match p {
            Parity::Even => self.even,
            Parity::Odd => self.odd,
        }
    }

    /// Parity of coordinate `k` in the even-first ordering.
    pub fn parity_of(&self, k: usize) -> Parity {
        if k < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn parities(&self) -> impl Iterator<Item = Parity> + '_ {
        (0..self.total()).map(|k| self.parity_of(k))
    }

    pub fn is_zero(&self) -> bool {
        self.total() == 0
    }
}

impl Add for GradedDim {
    type Output = GradedDim;
    fn add(self, rhs: GradedDim) -> GradedDim {
        GradedDim::new(self.even + rhs.even, self.odd + rhs.odd)
    }
}

impl fmt::Display for GradedDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.even, self.odd)
    }
}

/// Scalars over which a subspace is spanned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// ℚ(i)-span in the complex coordinates.
    Complex,
    /// ℚ-span in the realified coordinates: complex coordinate `k` becomes
    /// the two real slots `2k` (real part) and `2k + 1` (imaginary part).
    Real,
}

/// A sub super vector space in canonical form.
///
/// `even` and `odd` hold the rows of the reduced row echelon form of the
/// subspace, split by parity. Two subspaces are equal iff their stored
/// bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GradedSubspace {
    ambient: GradedDim,
    field: Field,
    even: Vec<Vec<GQ>>,
    odd: Vec<Vec<GQ>>,
}

impl GradedSubspace {
    pub fn zero(ambient: GradedDim, field: Field) -> Self {
        Self { ambient, field, even: Vec::new(), odd: Vec::new() }
    }

    /// The full ambient space with its standard basis.
    pub fn full(ambient: GradedDim, field: Field) -> Self {
        let n = coord_len(ambient, field);
        let vecs = (0..n).map(|k| unit(n, k));
        Self::from_coords(ambient, field, vecs).expect("unit vectors are homogeneous")
    }

    pub fn ambient(&self) -> GradedDim {
        self.ambient
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Length of a coordinate vector in this subspace's coordinate system.
    pub fn coord_len(&self) -> usize {
        coord_len(self.ambient, self.field)
    }

    pub fn dim(&self) -> GradedDim {
        GradedDim::new(self.even.len(), self.odd.len())
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn basis_even(&self) -> &[Vec<GQ>] {
        &self.even
    }

    pub fn basis_odd(&self) -> &[Vec<GQ>] {
        &self.odd
    }

    pub fn basis(&self, p: Parity) -> &[Vec<GQ>] {
        match p {
            Parity::Even => &self.even,
            Parity::Odd => &self.odd,
        }
    }

    /// Even basis followed by odd basis.
    pub fn basis_all(&self) -> impl Iterator<Item = &Vec<GQ>> {
        self.even.iter().chain(self.odd.iter())
    }

    /// Parity of a coordinate slot of this subspace's coordinate system.
    pub fn slot_parity(&self, slot: usize) -> Parity {
        match self.field {
            Field::Complex => self.ambient.parity_of(slot),
            Field::Real => self.ambient.parity_of(slot / 2),
        }
    }

    /// Canonical subspace spanned by vectors already given in this field's
    /// coordinate system (realified slots when `field` is `Real`).
    pub fn from_coords<I>(ambient: GradedDim, field: Field, vectors: I) -> Result<Self, GsError>
    where
        I: IntoIterator<Item = Vec<GQ>>,
    {
        let n = coord_len(ambient, field);
        let mut rows: [Vec<SparseVec>; 2] = [Vec::new(), Vec::new()];
        for v in vectors {
            if v.len() != n {
                return Err(GsError::Shape(format!("vector of length {} in ambient of {n} slots", v.len())));
            }
            if field == Field::Real && v.iter().any(|x| !x.is_real()) {
                return Err(GsError::Shape("non-real entry in realified coordinates".into()));
            }
            let sv = linalg::to_sparse(&v);
            let Some(p) = homogeneous_parity(&sv, |k| slot_parity(ambient, field, k))? else {
                continue;
            };
            rows[p.bit()].push(sv);
        }
        let [ev, od] = rows;
        let even = linalg::rref_rows(ev).iter().map(|r| linalg::to_dense(r, n)).collect();
        let odd = linalg::rref_rows(od).iter().map(|r| linalg::to_dense(r, n)).collect();
        Ok(Self { ambient, field, even, odd })
    }

    /// Canonical span of complex vectors (length = ambient total) over the
    /// requested scalars. For `Field::Real` the vectors are realified and
    /// their real span is returned.
    pub fn span<I>(ambient: GradedDim, field: Field, vectors: I) -> Result<Self, GsError>
    where
        I: IntoIterator<Item = Vec<GQ>>,
    {
        match field {
            Field::Complex => Self::from_coords(ambient, field, vectors),
            Field::Real => {
                let mut out = Vec::new();
                for v in vectors {
                    if v.len() != ambient.total() {
                        return Err(GsError::Shape(format!(
                            "vector of length {} in ambient {ambient}",
                            v.len()
                        )));
                    }
                    out.push(realify_vec(&v));
                }
                Self::from_coords(ambient, Field::Real, out)
            }
        }
    }

    pub fn contains(&self, v: &[GQ]) -> bool {
        let sv = linalg::to_sparse(v);
        let mut red = linalg::RowReducer::new();
        for b in self.basis_all() {
            red.insert(linalg::to_sparse(b));
        }
        red.contains(&sv)
    }

    fn check_compatible(&self, other: &Self) -> Result<(), GsError> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(GsError::AmbientMismatch(format!(
                "{} ({:?}) vs {} ({:?})",
                self.ambient, self.field, other.ambient, other.field
            )));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Self) -> Result<bool, GsError> {
        self.check_compatible(other)?;
        Ok(self.basis_all().all(|v| other.contains(v)))
    }

    pub fn sum(&self, other: &Self) -> Result<Self, GsError> {
        self.check_compatible(other)?;
        let vecs = self.basis_all().chain(other.basis_all()).cloned();
        Self::from_coords(self.ambient, self.field, vecs)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self, GsError> {
        self.check_compatible(other)?;
        let n = self.coord_len();
        let mut result = Vec::new();
        for p in [Parity::Even, Parity::Odd] {
            let a = self.basis(p);
            let b = other.basis(p);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            // columns: coefficients (alpha | beta); rows: coordinates
            // sum alpha_i a_i - sum beta_j b_j = 0
            let ncols = a.len() + b.len();
            let rows = (0..n).map(|slot| {
                let mut row: SparseVec = Vec::new();
                for (i, v) in a.iter().enumerate() {
                    if !v[slot].is_zero() {
                        row.push((i, v[slot].clone()));
                    }
                }
                for (j, v) in b.iter().enumerate() {
                    if !v[slot].is_zero() {
                        row.push((a.len() + j, -&v[slot]));
                    }
                }
                row
            });
            for k in linalg::kernel_basis(rows, ncols) {
                let mut w = vec![GQ::zero(); n];
                for (i, coef) in k.iter().filter(|(i, _)| *i < a.len()) {
                    for (slot, x) in a[*i].iter().enumerate() {
                        if !x.is_zero() {
                            w[slot] += &(coef * x);
                        }
                    }
                }
                result.push(w);
            }
        }
        Self::from_coords(self.ambient, self.field, result)
    }

    /// Real span of the subspace and its multiple by `i` (complex input
    /// required). Real dimension is twice the complex dimension.
    pub fn realify(&self) -> Result<Self, GsError> {
        if self.field != Field::Complex {
            return Err(GsError::FieldMismatch("realify expects a complex subspace".into()));
        }
        let vecs = self.basis_all().flat_map(|v| {
            let iv: Vec<GQ> = v.iter().map(GQ::mul_i).collect();
            [realify_vec(v), realify_vec(&iv)]
        });
        Self::from_coords(self.ambient, Field::Real, vecs.collect::<Vec<_>>())
    }

    /// `i · S` for a real subspace in realified coordinates.
    pub fn mul_i(&self) -> Result<Self, GsError> {
        if self.field != Field::Real {
            return Err(GsError::FieldMismatch("mul_i expects a real subspace".into()));
        }
        let vecs = self.basis_all().map(|v| mul_i_realified(v)).collect::<Vec<_>>();
        Self::from_coords(self.ambient, Field::Real, vecs)
    }

    /// The largest complex subspace contained in a real subspace,
    /// `S ∩ iS`, returned in complex coordinates.
    pub fn induced_complex_part(&self) -> Result<Self, GsError> {
        let inter = self.intersect(&self.mul_i()?)?;
        let vecs = inter.basis_all().map(|v| complexify_vec(v)).collect::<Vec<_>>();
        Self::from_coords(self.ambient, Field::Complex, vecs)
    }

    /// Every stored vector converted back to complex coordinates (`re + i im`
    /// per slot pair). Meaningful for real subspaces only.
    pub fn complex_generators(&self) -> Vec<Vec<GQ>> {
        match self.field {
            Field::Complex => self.basis_all().cloned().collect(),
            Field::Real => self.basis_all().map(|v| complexify_vec(v)).collect(),
        }
    }
}

fn coord_len(ambient: GradedDim, field: Field) -> usize {
    match field {
        Field::Complex => ambient.total(),
        Field::Real => 2 * ambient.total(),
    }
}

fn slot_parity(ambient: GradedDim, field: Field, slot: usize) -> Parity {
    match field {
        Field::Complex => ambient.parity_of(slot),
        Field::Real => ambient.parity_of(slot / 2),
    }
}

fn unit(n: usize, k: usize) -> Vec<GQ> {
    let mut v = vec![GQ::zero(); n];
    v[k] = GQ::one();
    v
}

/// Parity of a sparse vector, `None` for the zero vector.
pub(crate) fn homogeneous_parity(
    v: &SparseVec,
    parity: impl Fn(usize) -> Parity,
) -> Result<Option<Parity>, GsError> {
    let mut seen: Option<Parity> = None;
    for (k, _) in v {
        let p = parity(*k);
        match seen {
            None => seen = Some(p),
            Some(q) if q != p => {
                return Err(GsError::Parity(format!("vector has support in both parities (slot {k})")))
            }
            _ => {}
        }
    }
    Ok(seen)
}

/// Complex vector to realified coordinates.
pub fn realify_vec(v: &[GQ]) -> Vec<GQ> {
    v.iter()
        .flat_map(|x| [GQ::real(x.re.clone()), GQ::real(x.im.clone())])
        .collect()
}

/// Realified coordinates back to a complex vector.
pub fn complexify_vec(v: &[GQ]) -> Vec<GQ> {
    v.chunks(2)
        .map(|c| GQ::new(c[0].re.clone(), c[1].re.clone()))
        .collect()
}

fn mul_i_realified(v: &[GQ]) -> Vec<GQ> {
    v.chunks(2).flat_map(|c| [-&c[1], c[0].clone()]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<GQ> {
        xs.iter().map(|&x| GQ::from_int(x)).collect()
    }

    fn q(s: &str) -> GQ {
        s.parse().unwrap()
    }

    #[test]
    fn echelon_spanning_set_is_full() {
        let d = GradedDim::new(2, 0);
        let s = GradedSubspace::span(d, Field::Complex, [v(&[1, 0]), v(&[1, 1])]).unwrap();
        assert_eq!(s.basis_even(), &[v(&[1, 0]), v(&[0, 1])]);
        assert_eq!(s.dim(), GradedDim::new(2, 0));
    }

    #[test]
    fn echelon_empty_and_dependent() {
        let d = GradedDim::new(2, 0);
        let z = GradedSubspace::span(d, Field::Complex, Vec::<Vec<GQ>>::new()).unwrap();
        assert_eq!(z.dim(), GradedDim::ZERO);
        let s = GradedSubspace::span(d, Field::Complex, [v(&[2, 4]), v(&[1, 2])]).unwrap();
        assert_eq!(s.basis_even(), &[v(&[1, 2])]);
    }

    #[test]
    fn echelon_rejects_mixed_parity() {
        let d = GradedDim::new(1, 1);
        let err = GradedSubspace::span(d, Field::Complex, [v(&[1, 1])]).unwrap_err();
        assert!(matches!(err, GsError::Parity(_)));
    }

    #[test]
    fn echelon_is_idempotent() {
        let d = GradedDim::new(2, 1);
        let s = GradedSubspace::span(d, Field::Complex, [v(&[3, 1, 0]), v(&[0, 0, 5])]).unwrap();
        let t = GradedSubspace::span(d, Field::Complex, s.basis_all().cloned()).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn intersection_examples() {
        let d = GradedDim::new(2, 0);
        let a = GradedSubspace::span(d, Field::Complex, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        let b = GradedSubspace::span(d, Field::Complex, [v(&[1, 1])]).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), b);
        assert_eq!(a.intersect(&a).unwrap(), a);
        let z = GradedSubspace::zero(d, Field::Complex);
        assert_eq!(a.intersect(&z).unwrap(), z);
    }

    #[test]
    fn intersection_ambient_mismatch() {
        let a = GradedSubspace::full(GradedDim::new(2, 0), Field::Complex);
        let b = GradedSubspace::full(GradedDim::new(1, 1), Field::Complex);
        assert!(matches!(a.intersect(&b), Err(GsError::AmbientMismatch(_))));
    }

    #[test]
    fn realify_examples() {
        let c1 = GradedSubspace::full(GradedDim::new(1, 0), Field::Complex);
        let r = c1.realify().unwrap();
        assert_eq!(r.dim().total(), 2);
        let z = GradedSubspace::zero(GradedDim::new(3, 0), Field::Complex);
        assert!(z.realify().unwrap().is_zero());

        let d = GradedDim::new(2, 0);
        let s = GradedSubspace::span(d, Field::Complex, [vec![GQ::one(), GQ::i()]]).unwrap();
        let r = s.realify().unwrap();
        assert_eq!(r.dim(), GradedDim::new(2, 0));
        let expect = GradedSubspace::span(
            d,
            Field::Real,
            [vec![GQ::one(), GQ::i()], vec![GQ::i(), q("-1")]],
        )
        .unwrap();
        assert_eq!(r, expect);
    }

    #[test]
    fn mul_i_examples() {
        let d = GradedDim::new(2, 0);
        let std_real = GradedSubspace::span(d, Field::Real, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        let ir = std_real.mul_i().unwrap();
        assert!(std_real.intersect(&ir).unwrap().is_zero());
        assert_eq!(ir.mul_i().unwrap(), std_real);

        let full = GradedSubspace::full(d, Field::Real);
        assert_eq!(full.mul_i().unwrap(), full);

        let s = GradedSubspace::span(d, Field::Real, [v(&[1, 0]), vec![GQ::i(), GQ::zero()]]).unwrap();
        assert_eq!(s.mul_i().unwrap(), s);
    }

    #[test]
    fn induced_complex_part_examples() {
        let d = GradedDim::new(2, 0);
        let totally_real = GradedSubspace::span(d, Field::Real, [v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert!(totally_real.induced_complex_part().unwrap().is_zero());

        let full = GradedSubspace::full(d, Field::Real);
        assert_eq!(full.induced_complex_part().unwrap(), GradedSubspace::full(d, Field::Complex));

        // R x C inside C^2
        let mixed = GradedSubspace::span(
            d,
            Field::Real,
            [v(&[1, 0]), v(&[0, 1]), vec![GQ::zero(), GQ::i()]],
        )
        .unwrap();
        let c = mixed.induced_complex_part().unwrap();
        assert_eq!(c, GradedSubspace::span(d, Field::Complex, [v(&[0, 1])]).unwrap());
    }
}
