use std::fmt;

use super::{Field, FieldElem, LinAlgError, Matrix};

/// A subspace of `field^ambient_dim`, stored by its reduced row echelon basis.
///
/// Every constructor normalizes, so two subspaces are equal exactly when
/// their stored bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(field, 0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient_dim: usize) -> Subspace {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(field, ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Subspace {
        let (basis, pivots) = m.rref_with_pivots();
        Subspace {
            ambient_dim: m.cols(),
            basis,
            pivots,
        }
    }

    pub fn span(field: Field, ambient_dim: usize, vectors: Vec<Vec<FieldElem>>) -> Result<Subspace, LinAlgError> {
        let m = Matrix::from_rows(field, ambient_dim, vectors)?;
        Ok(Subspace::from_matrix(&m))
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient_dim
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<FieldElem>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.field() != other.field() {
            return Err(LinAlgError::FieldMismatch {
                left: self.field(),
                right: other.field(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: other.ambient_dim,
            });
        }
        Ok(())
    }

    fn check_vector(&self, v: &[FieldElem]) -> Result<(), LinAlgError> {
        if v.len() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: v.len(),
            });
        }
        if let Some(bad) = v.iter().find(|e| e.field() != self.field()) {
            return Err(LinAlgError::FieldMismatch {
                left: self.field(),
                right: bad.field(),
            });
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)?))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.field(), self.ambient_dim));
        }
        // (a, b) with a·U = b·V: left kernel of the stacked basis.
        let stacked = self.basis.vstack(&other.basis)?;
        let relations = stacked.transpose().kernel();
        let du = self.dim();
        let vectors = relations
            .basis_vectors()
            .into_iter()
            .map(|coeffs| self.combine(&coeffs[..du]))
            .collect();
        Subspace::span(self.field(), self.ambient_dim, vectors)
    }

    /// Linear combination of the basis rows with the given coefficients.
    pub fn combine(&self, coeffs: &[FieldElem]) -> Vec<FieldElem> {
        let mut out = vec![self.field().zero(); self.ambient_dim];
        for (c, r) in coeffs.iter().zip(0..self.dim()) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(self.basis.row(r)) {
                *o = &*o + &(c * x);
            }
        }
        out
    }

    /// Canonical representative of `v + self`: `v` with all pivot coordinates cleared.
    pub fn reduce(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, LinAlgError> {
        self.check_vector(v)?;
        let mut out = v.to_vec();
        for (r, &pc) in self.pivots.iter().enumerate() {
            if out[pc].is_zero() {
                continue;
            }
            let factor = out[pc].clone();
            for (o, x) in out.iter_mut().zip(self.basis.row(r)) {
                *o = &*o - &(&factor * x);
            }
        }
        Ok(out)
    }

    pub fn contains_vector(&self, v: &[FieldElem]) -> Result<bool, LinAlgError> {
        Ok(self.reduce(v)?.iter().all(FieldElem::is_zero))
    }

    /// Coordinates of a member vector with respect to the stored basis.
    pub fn coordinates(&self, v: &[FieldElem]) -> Result<Vec<FieldElem>, LinAlgError> {
        if !self.contains_vector(v)? {
            return Err(LinAlgError::NotInSubspace);
        }
        Ok(self.pivots.iter().map(|&pc| v[pc].clone()).collect())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        for r in 0..self.dim() {
            if !other.contains_vector(self.basis.row(r))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Image of the subspace under a linear map (matrix with `cols == ambient_dim`).
    pub fn image_under(&self, map: &Matrix) -> Result<Subspace, LinAlgError> {
        let vectors = self
            .basis_vectors()
            .iter()
            .map(|v| map.apply(v))
            .collect::<Result<Vec<_>, _>>()?;
        Subspace::span(self.field(), map.rows(), vectors)
    }

    /// `{ x : map·x ∈ self }`, a subspace of the map's domain.
    pub fn preimage_under(&self, map: &Matrix) -> Result<Subspace, LinAlgError> {
        if map.rows() != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found: map.rows(),
            });
        }
        if self.is_full() {
            return Ok(Subspace::full(map.field(), map.cols()));
        }
        // Functionals vanishing on self cut it out: self = ker(annihilator rows).
        let annihilator = self.basis.kernel();
        let cut = Matrix::from_rows(self.field(), self.ambient_dim, annihilator.basis_vectors())?;
        Ok(cut.mul(map)?.kernel())
    }

    /// Coordinates of a complement: the non-pivot positions, which index a
    /// basis of the quotient `field^n / self`.
    pub fn complement_positions(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Every vector of the subspace (finite fields only), ordered by coefficient tuple.
    pub fn vectors(&self) -> Result<Vec<Vec<FieldElem>>, LinAlgError> {
        let elems = self.field().elements()?;
        let p = elems.len();
        let total = p.checked_pow(self.dim() as u32).ok_or(LinAlgError::TooLarge)?;
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; self.dim()];
        for _ in 0..total {
            let coeffs: Vec<FieldElem> = digits.iter().map(|&d| elems[d].clone()).collect();
            out.push(self.combine(&coeffs));
            for d in digits.iter_mut().rev() {
                *d += 1;
                if *d < p {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// Number of vectors in the subspace, `None` over `Q` or on overflow.
    pub fn cardinality(&self) -> Option<u64> {
        self.field().order().and_then(|p| p.checked_pow(self.dim() as u32))
    }

    /// All subspaces of `field^n` (finite fields only), by rank then pivot set
    /// then free entries.
    pub fn enumerate_all(field: Field, n: usize) -> Result<Vec<Subspace>, LinAlgError> {
        let elems = field.elements()?;
        let mut out = Vec::new();
        for rank in 0..=n {
            for pivots in combinations(n, rank) {
                // free slots: (row, col) with col > pivot[row] and col not a pivot
                let slots: Vec<(usize, usize)> = pivots
                    .iter()
                    .enumerate()
                    .flat_map(|(r, &pc)| {
                        let pivots = &pivots;
                        (pc + 1..n).filter(move |c| !pivots.contains(c)).map(move |c| (r, c))
                    })
                    .collect();
                let mut digits = vec![0usize; slots.len()];
                loop {
                    let mut m = Matrix::zeros(field, rank, n);
                    for (r, &pc) in pivots.iter().enumerate() {
                        m.set(r, pc, field.one());
                    }
                    for (&(r, c), &d) in slots.iter().zip(&digits) {
                        m.set(r, c, elems[d].clone());
                    }
                    out.push(Subspace {
                        ambient_dim: n,
                        basis: m,
                        pivots: pivots.clone(),
                    });
                    let mut carried = true;
                    for d in digits.iter_mut().rev() {
                        *d += 1;
                        if *d < elems.len() {
                            carried = false;
                            break;
                        }
                        *d = 0;
                    }
                    if carried {
                        break;
                    }
                }
            }
        }
        Ok(out)
    }

    /// All subspaces contained in `self`.
    pub fn subspaces(&self) -> Result<Vec<Subspace>, LinAlgError> {
        let inner = Subspace::enumerate_all(self.field(), self.dim())?;
        inner
            .into_iter()
            .map(|s| {
                let vectors = s.basis_vectors().iter().map(|c| self.combine(c)).collect();
                Subspace::span(self.field(), self.ambient_dim, vectors)
            })
            .collect()
    }

    /// Number of subspaces of `GF(q)^n` (Gaussian binomial sum), saturating.
    pub fn count_all(q: u64, n: usize) -> u64 {
        (0..=n).fold(0u64, |acc, k| acc.saturating_add(gaussian_binomial(q, n, k)))
    }
}

fn gaussian_binomial(q: u64, n: usize, k: usize) -> u64 {
    // Product formula evaluated in u128 with saturation.
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    let q = q as u128;
    for i in 0..k {
        let a = q.saturating_pow((n - i) as u32).saturating_sub(1);
        let b = q.saturating_pow((i + 1) as u32).saturating_sub(1);
        num = num.saturating_mul(a);
        den = den.saturating_mul(b);
        let g = gcd(num, den);
        num /= g;
        den /= g;
    }
    u64::try_from(num / den.max(1)).unwrap_or(u64::MAX)
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// k-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        write!(f, "span{{")?;
        for r in 0..self.dim() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "(")?;
            for (i, v) in self.basis.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{v}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(field: Field, xs: &[i64]) -> Vec<FieldElem> {
        xs.iter().map(|&x| field.from_i64(x)).collect()
    }

    fn line(field: Field, xs: &[i64]) -> Subspace {
        Subspace::span(field, xs.len(), vec![v(field, xs)]).unwrap()
    }

    /// Closure of a vector set under addition, by brute force over GF(2).
    fn closure_gf2(gens: &[Vec<FieldElem>], n: usize) -> Vec<Vec<FieldElem>> {
        let f = Field::gf2();
        let mut set = vec![vec![f.zero(); n]];
        loop {
            let mut grew = false;
            for a in set.clone() {
                for g in gens {
                    let s: Vec<FieldElem> = a.iter().zip(g).map(|(x, y)| x + y).collect();
                    if !set.contains(&s) {
                        set.push(s);
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    #[test]
    fn zero_is_neutral_for_sum() {
        let f = Field::gf2();
        let u = line(f, &[1, 1, 0]);
        assert_eq!(u.sum(&Subspace::zero(f, 3)).unwrap(), u);
    }

    #[test]
    fn complementary_lines() {
        let f = Field::gf2();
        let e1 = line(f, &[1, 0]);
        let e2 = line(f, &[0, 1]);
        assert_eq!(e1.sum(&e2).unwrap(), Subspace::full(f, 2));
        assert_eq!(e1.intersect(&e2).unwrap(), Subspace::zero(f, 2));
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert!(!e2.contains_vector(&v(f, &[1, 0])).unwrap());
    }

    #[test]
    fn sum_matches_additive_closure() {
        let f = Field::gf2();
        let a = v(f, &[1, 1, 0]);
        let b = v(f, &[0, 1, 1]);
        let s = line(f, &[1, 1, 0]).sum(&line(f, &[0, 1, 1])).unwrap();
        let brute = closure_gf2(&[a, b], 3);
        assert_eq!(brute.len(), 4);
        assert_eq!(s.dim(), 2);
        let mut members = s.vectors().unwrap();
        members.sort();
        let mut brute_sorted = brute;
        brute_sorted.sort();
        assert_eq!(members, brute_sorted);
        assert!(s.contains_vector(&v(f, &[1, 0, 1])).unwrap());
    }

    #[test]
    fn intersection_of_planes_matches_scan() {
        let f = Field::gf2();
        let p1 = Subspace::span(f, 3, vec![v(f, &[1, 0, 0]), v(f, &[0, 1, 0])]).unwrap();
        let p2 = Subspace::span(f, 3, vec![v(f, &[0, 1, 0]), v(f, &[0, 0, 1])]).unwrap();
        let scan: Vec<Vec<FieldElem>> = Subspace::full(f, 3)
            .vectors()
            .unwrap()
            .into_iter()
            .filter(|x| p1.contains_vector(x).unwrap() && p2.contains_vector(x).unwrap())
            .collect();
        let meet = p1.intersect(&p2).unwrap();
        assert_eq!(meet, Subspace::span(f, 3, scan).unwrap());
        assert_eq!(meet, line(f, &[0, 1, 0]));
    }

    #[test]
    fn member_examples() {
        let f = Field::gf2();
        let s = Subspace::span(f, 3, vec![v(f, &[1, 1, 0]), v(f, &[0, 1, 1])]).unwrap();
        assert!(s.contains_vector(&v(f, &[0, 0, 0])).unwrap());
        assert!(s.contains_vector(&v(f, &[1, 0, 1])).unwrap());
        assert!(s.contains_vector(&v(f, &[0, 1])).is_err());
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let f = Field::gf2();
        assert!(Subspace::full(f, 2).sum(&Subspace::full(f, 3)).is_err());
        assert!(Subspace::full(f, 2)
            .intersect(&Subspace::full(Field::Prime(3), 2))
            .is_err());
    }

    #[test]
    fn enumeration_counts_match_gaussian_binomials() {
        for (q, field) in [(2u64, Field::gf2()), (3, Field::Prime(3))] {
            for n in 0..=3 {
                let all = Subspace::enumerate_all(field, n).unwrap();
                assert_eq!(all.len() as u64, Subspace::count_all(q, n));
                let mut dedup = all.clone();
                dedup.sort();
                dedup.dedup();
                assert_eq!(dedup.len(), all.len());
            }
        }
        // GF(2)^2 has 5 subspaces, GF(2)^3 has 16.
        assert_eq!(Subspace::count_all(2, 2), 5);
        assert_eq!(Subspace::count_all(2, 3), 16);
    }

    #[test]
    fn preimage_and_image() {
        let f = Field::gf2();
        // projection onto the first coordinate
        let m = Matrix::from_ints(f, &[&[1, 0]]);
        let pre = Subspace::zero(f, 1).preimage_under(&m).unwrap();
        assert_eq!(pre, line(f, &[0, 1]));
        assert_eq!(Subspace::full(f, 2).image_under(&m).unwrap(), Subspace::full(f, 1));
    }
}
