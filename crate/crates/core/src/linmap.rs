//! Linear self-maps of a pattern-basis algebra, stored by basis images.
//!
//! A map is the `d`-tuple of images of the basis elements; applying it to an
//! arbitrary element is linear extension. For matrix-unit bases the images
//! can be read as the coefficient family `a_{kl}^{(ij)}`: the coefficient of
//! `e_kl` in the image of `e_ij`.

use crate::algebra::{same_algebra, Algebra, AlgebraError, AlgebraKind, MatElem};
use crate::ring::{Ring, Zmod};
use std::sync::Arc;

/// Errors from building and applying linear maps.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("operands belong to different algebras")]
    AlgebraMismatch,
    #[error("expected {expected} basis images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("coefficient tables require a matrix-unit basis (full or upper triangular)")]
    PatternAlgebraUnsupported,
}

/// A linear map `D` on an algebra, determined by the images `D(b_0..b_{d-1})`.
#[derive(Clone, Debug)]
pub struct LinearMap<R: Ring> {
    algebra: Arc<Algebra<R>>,
    /// Row-major `d x d`: `images[k*d + r]` is the `b_r` coordinate of `D(b_k)`.
    images: Vec<R::Elem>,
}

impl<R: Ring> PartialEq for LinearMap<R> {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.algebra, &other.algebra) && self.images == other.images
    }
}
impl<R: Ring> Eq for LinearMap<R> {}

impl<R: Ring> LinearMap<R> {
    /// Builds a map from the images of the basis elements, in basis order.
    pub fn new(algebra: &Arc<Algebra<R>>, images: Vec<MatElem<R>>) -> Result<Self, MapError> {
        let d = algebra.dim();
        if images.len() != d {
            return Err(MapError::ImageCount {
                expected: d,
                got: images.len(),
            });
        }
        let mut flat = Vec::with_capacity(d * d);
        for img in &images {
            if !same_algebra(img.algebra(), algebra) {
                return Err(MapError::AlgebraMismatch);
            }
            flat.extend(img.coords().iter().cloned());
        }
        Ok(LinearMap {
            algebra: algebra.clone(),
            images: flat,
        })
    }

    /// Builds a map from raw coordinate rows, one row per basis element.
    pub fn from_rows(algebra: &Arc<Algebra<R>>, rows: Vec<Vec<R::Elem>>) -> Result<Self, MapError> {
        let d = algebra.dim();
        if rows.len() != d {
            return Err(MapError::ImageCount {
                expected: d,
                got: rows.len(),
            });
        }
        let mut flat = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(MapError::Algebra(AlgebraError::CoordinateCount {
                    expected: d,
                    got: row.len(),
                }));
            }
            flat.extend(row);
        }
        Ok(LinearMap {
            algebra: algebra.clone(),
            images: flat,
        })
    }

    /// Builds a map from a flat `d*d` coordinate buffer, row-major.
    pub fn from_flat(algebra: &Arc<Algebra<R>>, flat: Vec<R::Elem>) -> Result<Self, MapError> {
        let d = algebra.dim();
        if flat.len() != d * d {
            return Err(MapError::Algebra(AlgebraError::CoordinateCount {
                expected: d * d,
                got: flat.len(),
            }));
        }
        Ok(LinearMap {
            algebra: algebra.clone(),
            images: flat,
        })
    }

    pub fn zero(algebra: &Arc<Algebra<R>>) -> Self {
        let d = algebra.dim();
        LinearMap {
            algebra: algebra.clone(),
            images: vec![algebra.ring().zero(); d * d],
        }
    }

    /// The inner map `x -> Bx - xB`. Always a derivation.
    pub fn inner(b: &MatElem<R>) -> Self {
        let algebra = b.algebra().clone();
        let d = algebra.dim();
        let ring = algebra.ring().clone();
        let mut images = Vec::with_capacity(d * d);
        let mut left = vec![ring.zero(); d];
        let mut right = vec![ring.zero(); d];
        let mut unit = vec![ring.zero(); d];
        for k in 0..d {
            for (t, slot) in unit.iter_mut().enumerate() {
                *slot = if t == k { ring.one() } else { ring.zero() };
            }
            algebra.mul_coords_into(b.coords(), &unit, &mut left);
            algebra.mul_coords_into(&unit, b.coords(), &mut right);
            for r in 0..d {
                images.push(ring.sub(&left[r], &right[r]));
            }
        }
        LinearMap { algebra, images }
    }

    pub fn algebra(&self) -> &Arc<Algebra<R>> {
        &self.algebra
    }

    /// The image `D(b_k)` as an element.
    pub fn image(&self, k: usize) -> MatElem<R> {
        let d = self.algebra.dim();
        self.algebra
            .elem(self.images[k * d..(k + 1) * d].to_vec())
            .expect("stored image rows always have length d")
    }

    /// Raw coordinates of `D(b_k)`.
    pub fn image_coords(&self, k: usize) -> &[R::Elem] {
        let d = self.algebra.dim();
        &self.images[k * d..(k + 1) * d]
    }

    /// The whole map as a flat row-major `d*d` buffer.
    pub fn flat(&self) -> &[R::Elem] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        let ring = self.algebra.ring();
        self.images.iter().all(|c| ring.is_zero(c))
    }

    /// Applies the map by linear extension.
    pub fn apply(&self, x: &MatElem<R>) -> Result<MatElem<R>, MapError> {
        if !same_algebra(x.algebra(), &self.algebra) {
            return Err(MapError::AlgebraMismatch);
        }
        let ring = self.algebra.ring();
        let d = self.algebra.dim();
        let mut out = vec![ring.zero(); d];
        for (k, alpha) in x.coords().iter().enumerate() {
            if ring.is_zero(alpha) {
                continue;
            }
            for (r, slot) in out.iter_mut().enumerate() {
                ring.mul_add_assign(slot, alpha, &self.images[k * d + r]);
            }
        }
        Ok(self.algebra.elem(out).expect("length preserved"))
    }

    pub fn add(&self, other: &Self) -> Result<Self, MapError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(MapError::AlgebraMismatch);
        }
        let ring = self.algebra.ring();
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| ring.add(a, b))
            .collect();
        Ok(LinearMap {
            algebra: self.algebra.clone(),
            images,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MapError> {
        if !same_algebra(&self.algebra, &other.algebra) {
            return Err(MapError::AlgebraMismatch);
        }
        let ring = self.algebra.ring();
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(a, b)| ring.sub(a, b))
            .collect();
        Ok(LinearMap {
            algebra: self.algebra.clone(),
            images,
        })
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let ring = self.algebra.ring();
        LinearMap {
            algebra: self.algebra.clone(),
            images: self.images.iter().map(|a| ring.mul(c, a)).collect(),
        }
    }

    /// Byte-stable key: canonical renderings joined positionally. Equal maps
    /// on the same algebra produce equal keys and vice versa.
    pub fn canonical_key(&self) -> String {
        let ring = self.algebra.ring();
        let d = self.algebra.dim();
        let mut rows = Vec::with_capacity(d);
        for k in 0..d {
            let row: Vec<String> = self
                .image_coords(k)
                .iter()
                .map(|c| ring.render(c))
                .collect();
            rows.push(row.join(","));
        }
        rows.join(";")
    }

    /// The coefficient view `a_{kl}^{(ij)}`; only matrix-unit bases have one.
    pub fn coefficient_table(&self) -> Result<CoefficientTable<R>, MapError> {
        let n = match self.algebra.kind() {
            AlgebraKind::Full { n } | AlgebraKind::UpperTriangular { n } => n,
            AlgebraKind::Pattern => return Err(MapError::PatternAlgebraUnsupported),
        };
        Ok(CoefficientTable {
            n,
            map: self.clone(),
        })
    }
}

/// The coefficient family of a map on a matrix-unit basis, indexed the way
/// the subject is usually written: `coeff(k, l, i, j)` is `a_{kl}^{(ij)}`,
/// the coefficient of `e_kl` in the image of `e_ij`. All labels are 1-based.
#[derive(Clone, Debug)]
pub struct CoefficientTable<R: Ring> {
    n: usize,
    map: LinearMap<R>,
}

impl<R: Ring> CoefficientTable<R> {
    /// Matrix side length n.
    pub fn n(&self) -> usize {
        self.n
    }

    /// The coefficient ring.
    pub fn ring(&self) -> &R {
        self.map.algebra().ring()
    }

    /// `a_{kl}^{(ij)}`. Panics when either label is not a basis unit of the
    /// algebra (e.g. a below-diagonal label on a triangular algebra).
    pub fn coeff(&self, k: u32, l: u32, i: u32, j: u32) -> &R::Elem {
        let alg = self.map.algebra();
        let img = alg
            .unit_index(i, j)
            .unwrap_or_else(|| panic!("e_{i}{j} is not a basis unit of this algebra"));
        let pos = alg
            .unit_index(k, l)
            .unwrap_or_else(|| panic!("e_{k}{l} is not a basis unit of this algebra"));
        &self.map.image_coords(img)[pos]
    }
}

/// The canonical Jordan-but-not-Leibniz map on `algebra::example1_algebra`:
/// `D(X) = a_34 e_12 + a_24 e_13 + a_13 e_24 + a_12 e_34` where `a_rc` is
/// the coefficient of `e_rc` in `X`. Panics when handed any other algebra.
pub fn example1_map(algebra: &Arc<Algebra<Zmod>>) -> LinearMap<Zmod> {
    let expect = crate::algebra::example1_algebra();
    assert!(
        same_algebra(algebra, &expect),
        "example map is only defined on the example algebra"
    );
    let rows: Vec<Vec<u64>> = vec![
        vec![0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 0, 0, 0, 1],
        vec![0, 0, 0, 0, 0, 1, 0],
        vec![0, 0, 0, 0, 0, 0, 0],
        vec![0, 0, 0, 1, 0, 0, 0],
        vec![0, 0, 1, 0, 0, 0, 0],
    ];
    LinearMap::from_rows(algebra, rows).expect("row shape matches the algebra")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{example1_algebra, Algebra};
    use crate::ring::Integers;
    use proptest::prelude::*;

    #[test]
    fn example_map_images() {
        let alg = example1_algebra();
        let d = example1_map(&alg);
        // D(e13) = e24.
        assert_eq!(d.image(3), alg.basis_elem(5));
        // D(e14) = 0 and D of both diagonal patterns is 0.
        assert!(d.image(4).is_zero());
        assert!(d.image(0).is_zero());
        assert!(d.image(1).is_zero());
        // D fixes nothing but swaps e12 <-> e34 and e13 <-> e24.
        assert_eq!(d.image(2), alg.basis_elem(6));
        assert_eq!(d.image(6), alg.basis_elem(2));
    }

    #[test]
    fn apply_on_paper_sums() {
        let alg = example1_algebra();
        let d = example1_map(&alg);
        let x = alg.elem_from_i64(&[1, 1, 0, 1, 1, 0, 1]).unwrap();
        // D(X) = a_34 e_12 + a_13 e_24 = e_12 + e_24.
        assert_eq!(
            d.apply(&x).unwrap(),
            alg.elem_from_i64(&[0, 0, 1, 0, 0, 1, 0]).unwrap()
        );
        assert!(d.apply(&alg.unit_elem()).unwrap().is_zero());
        assert!(d.apply(&alg.zero_elem()).unwrap().is_zero());
    }

    #[test]
    fn image_count_is_checked() {
        let alg = Algebra::upper_triangular(2, Integers).unwrap();
        let err = LinearMap::new(&alg, vec![alg.zero_elem()]).unwrap_err();
        assert_eq!(
            err,
            MapError::ImageCount {
                expected: 3,
                got: 1
            }
        );
    }

    #[test]
    fn foreign_images_are_rejected() {
        let t2 = Algebra::upper_triangular(2, Integers).unwrap();
        let m2 = Algebra::full(2, Integers).unwrap();
        let images = vec![t2.zero_elem(), m2.zero_elem(), t2.zero_elem()];
        assert_eq!(
            LinearMap::new(&t2, images).unwrap_err(),
            MapError::AlgebraMismatch
        );
    }

    #[test]
    fn inner_map_on_triangular() {
        // ad_{e11} on T_2 sends x to x_12 e_12.
        let alg = Algebra::upper_triangular(2, Integers).unwrap();
        let b = alg.basis_elem(0);
        let d = LinearMap::inner(&b);
        let expected = LinearMap::from_rows(
            &alg,
            vec![
                [0, 0, 0].iter().map(|&v| Integers.from_i64(v)).collect(),
                [0, 1, 0].iter().map(|&v| Integers.from_i64(v)).collect(),
                [0, 0, 0].iter().map(|&v| Integers.from_i64(v)).collect(),
            ],
        )
        .unwrap();
        assert_eq!(d, expected);
    }

    #[test]
    fn inner_map_on_full() {
        // ad_{e12} on M_2: e11 -> -e12, e12 -> 0, e21 -> e11 - e22, e22 -> e12.
        let alg = Algebra::full(2, Integers).unwrap();
        let b = alg.basis_elem(1);
        let d = LinearMap::inner(&b);
        assert_eq!(d.image(0), alg.elem_from_i64(&[0, -1, 0, 0]).unwrap());
        assert!(d.image(1).is_zero());
        assert_eq!(d.image(2), alg.elem_from_i64(&[1, 0, 0, -1]).unwrap());
        assert_eq!(d.image(3), alg.elem_from_i64(&[0, 1, 0, 0]).unwrap());
    }

    #[test]
    fn central_elements_give_zero_inner_maps() {
        let alg = example1_algebra();
        assert!(LinearMap::inner(&alg.zero_elem()).is_zero());
        assert!(LinearMap::inner(&alg.unit_elem()).is_zero());
    }

    #[test]
    fn coefficient_table_entries() {
        let alg = Algebra::upper_triangular(2, Integers).unwrap();
        let d = LinearMap::inner(&alg.basis_elem(0));
        let table = d.coefficient_table().unwrap();
        assert_eq!(table.n(), 2);
        assert_eq!(table.coeff(1, 2, 1, 2), &Integers.one());
        assert_eq!(table.coeff(1, 2, 2, 2), &Integers.zero());
        assert_eq!(table.coeff(1, 1, 1, 1), &Integers.zero());
    }

    #[test]
    fn coefficient_table_needs_matrix_units() {
        let alg = example1_algebra();
        let d = example1_map(&alg);
        assert_eq!(
            d.coefficient_table().unwrap_err(),
            MapError::PatternAlgebraUnsupported
        );
    }

    #[test]
    #[should_panic(expected = "not a basis unit")]
    fn coefficient_table_rejects_below_diagonal_labels() {
        let alg = Algebra::upper_triangular(2, Integers).unwrap();
        let table = LinearMap::zero(&alg).coefficient_table().unwrap();
        let _ = table.coeff(2, 1, 1, 1);
    }

    proptest! {
        #[test]
        fn apply_is_linear(
            b in proptest::collection::vec(-3i64..4, 4),
            x in proptest::collection::vec(-5i64..6, 4),
            y in proptest::collection::vec(-5i64..6, 4),
            c in -4i64..5,
        ) {
            let alg = Algebra::full(2, Integers).unwrap();
            let d = LinearMap::inner(&alg.elem_from_i64(&b).unwrap());
            let x = alg.elem_from_i64(&x).unwrap();
            let y = alg.elem_from_i64(&y).unwrap();
            let sum = d.apply(&x.add(&y).unwrap()).unwrap();
            prop_assert_eq!(sum, d.apply(&x).unwrap().add(&d.apply(&y).unwrap()).unwrap());
            let c = Integers.from_i64(c);
            let scaled = d.apply(&x.scale(&c)).unwrap();
            prop_assert_eq!(scaled, d.apply(&x).unwrap().scale(&c));
        }

        #[test]
        fn map_arithmetic_matches_pointwise(
            b1 in proptest::collection::vec(-3i64..4, 3),
            b2 in proptest::collection::vec(-3i64..4, 3),
            x in proptest::collection::vec(-5i64..6, 3),
        ) {
            let alg = Algebra::upper_triangular(2, Integers).unwrap();
            let d1 = LinearMap::inner(&alg.elem_from_i64(&b1).unwrap());
            let d2 = LinearMap::inner(&alg.elem_from_i64(&b2).unwrap());
            let x = alg.elem_from_i64(&x).unwrap();
            let lhs = d1.add(&d2).unwrap().apply(&x).unwrap();
            let rhs = d1.apply(&x).unwrap().add(&d2.apply(&x).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
