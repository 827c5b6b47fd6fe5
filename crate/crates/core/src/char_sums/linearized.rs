//! The linearized polynomial f_a(X) = a^{p^alpha} X^{p^{2 alpha}} + a X as an
//! e x e matrix over Z_p, with a reduced row echelon form for solving
//! f_a(X) = y and describing its kernel.

use crate::error::{Error, Result};
use crate::field::{Field, FieldElement, PrimeResidue};
use crate::poly::inv_mod;

/// Every solution of one equation f_a(X) = y, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionSet {
    elements: Vec<FieldElement>,
}

impl SolutionSet {
    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// Row-reduction data for an F_p-linear endomorphism of F_q.
#[derive(Debug, Clone)]
struct Echelon {
    p: u32,
    e: usize,
    /// Row operations: `transform * matrix = reduced`, both row-major e x e.
    transform: Vec<u32>,
    reduced: Vec<u32>,
    /// `pivots[r]` is the pivot column of row r, for r < rank.
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(matrix: &[u32], e: usize, p: u32) -> Self {
        let p64 = p as u64;
        let mut reduced = matrix.to_vec();
        let mut transform = vec![0u32; e * e];
        for i in 0..e {
            transform[i * e + i] = 1;
        }
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..e {
            let Some(pivot) = (row..e).find(|&r| reduced[r * e + col] != 0) else {
                continue;
            };
            swap_rows(&mut reduced, e, row, pivot);
            swap_rows(&mut transform, e, row, pivot);
            let inv = inv_mod(reduced[row * e + col], p) as u64;
            scale_row(&mut reduced, e, row, inv, p64);
            scale_row(&mut transform, e, row, inv, p64);
            for r in 0..e {
                let factor = reduced[r * e + col] as u64;
                if r != row && factor != 0 {
                    sub_row(&mut reduced, e, r, row, factor, p64);
                    sub_row(&mut transform, e, r, row, factor, p64);
                }
            }
            pivots.push(col);
            row += 1;
            if row == e {
                break;
            }
        }
        Echelon { p, e, transform, reduced, pivots }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One solution of `matrix * x = y` with free variables set to zero.
    fn particular(&self, y: &[u32]) -> Option<Vec<u32>> {
        let e = self.e;
        let p = self.p as u64;
        let z: Vec<u32> = (0..e)
            .map(|i| {
                let row = &self.transform[i * e..(i + 1) * e];
                (row.iter().zip(y).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() % p) as u32
            })
            .collect();
        if z[self.rank()..].iter().any(|&v| v != 0) {
            return None;
        }
        let mut x = vec![0u32; e];
        for (r, &col) in self.pivots.iter().enumerate() {
            x[col] = z[r];
        }
        Some(x)
    }

    fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let e = self.e;
        let p = self.p;
        (0..e)
            .filter(|c| !self.pivots.contains(c))
            .map(|free| {
                let mut v = vec![0u32; e];
                v[free] = 1;
                for (r, &col) in self.pivots.iter().enumerate() {
                    let entry = self.reduced[r * e + free];
                    v[col] = (p - entry) % p;
                }
                v
            })
            .collect()
    }
}

fn swap_rows(m: &mut [u32], e: usize, a: usize, b: usize) {
    if a != b {
        for j in 0..e {
            m.swap(a * e + j, b * e + j);
        }
    }
}

fn scale_row(m: &mut [u32], e: usize, r: usize, k: u64, p: u64) {
    for j in 0..e {
        m[r * e + j] = (m[r * e + j] as u64 * k % p) as u32;
    }
}

fn sub_row(m: &mut [u32], e: usize, target: usize, source: usize, k: u64, p: u64) {
    for j in 0..e {
        let sub = m[source * e + j] as u64 * k % p;
        m[target * e + j] = ((m[target * e + j] as u64 + p - sub) % p) as u32;
    }
}

/// X -> a^{p^alpha} X^{p^{2 alpha}} + a X over a fixed field.
#[derive(Debug, Clone)]
pub struct LinearizedMap<'f> {
    field: &'f Field,
    a: FieldElement,
    a_frob: FieldElement,
    echelon: Echelon,
    kernel: Vec<FieldElement>,
}

impl<'f> LinearizedMap<'f> {
    pub fn new(field: &'f Field, a: &FieldElement) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::param("a must be nonzero"));
        }
        let e = field.e();
        let alpha = field.params().alpha();
        let a_frob = field.frobenius(a, alpha);
        let mut matrix = vec![0u32; e * e];
        let mut basis = field.one();
        let x = field.x();
        let mut this = LinearizedMap {
            field,
            a: a.clone(),
            a_frob,
            echelon: Echelon { p: field.p(), e, transform: Vec::new(), reduced: Vec::new(), pivots: Vec::new() },
            kernel: Vec::new(),
        };
        for j in 0..e {
            let image = this.apply(&basis);
            for (i, &c) in image.coeffs().iter().enumerate() {
                matrix[i * e + j] = c;
            }
            basis = field.mul(&basis, &x);
        }
        this.echelon = Echelon::new(&matrix, e, field.p());
        this.kernel = this.echelon.kernel_basis().into_iter().map(|v| field.wrap(v)).collect();
        Ok(this)
    }

    /// f(X) = X^{p^{2 alpha}} + X, the map every code construction uses.
    pub fn unit(field: &'f Field) -> Self {
        Self::new(field, &field.one()).expect("1 is nonzero")
    }

    /// f_a(x) evaluated directly with Frobenius powers.
    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        let alpha = self.field.params().alpha();
        let x_pp = self.field.frobenius(x, 2 * alpha);
        self.field.add(&self.field.mul(&self.a_frob, &x_pp), &self.field.mul(&self.a, x))
    }

    pub fn kernel_dimension(&self) -> usize {
        self.field.e() - self.echelon.rank()
    }

    pub fn is_bijective(&self) -> bool {
        self.echelon.rank() == self.field.e()
    }

    pub fn kernel_basis(&self) -> &[FieldElement] {
        &self.kernel
    }

    /// Some solution of f_a(X) = y, or None when y is not in the image.
    pub fn solve_one(&self, y: &FieldElement) -> Option<FieldElement> {
        self.echelon.particular(y.coeffs()).map(|v| self.field.wrap(v))
    }

    /// The complete solution set: a coset of the kernel, or empty.
    pub fn solve(&self, y: &FieldElement) -> SolutionSet {
        let Some(x0) = self.solve_one(y) else {
            return SolutionSet { elements: Vec::new() };
        };
        let mut elements = vec![x0];
        for v in &self.kernel {
            let mut next = Vec::with_capacity(elements.len() * self.field.p() as usize);
            for x in &elements {
                let mut shifted = x.clone();
                for _ in 0..self.field.p() {
                    next.push(shifted.clone());
                    shifted = self.field.add(&shifted, v);
                }
            }
            elements = next;
        }
        elements.sort();
        SolutionSet { elements }
    }
}

/// Right-hand side -b^{p^alpha} of the equations the codes need.
pub fn f_target(field: &Field, b: &FieldElement) -> FieldElement {
    field.neg(&field.frobenius(b, field.params().alpha()))
}

/// All solutions of X^{p^{2 alpha}} + X = -b^{p^alpha}.
pub fn solve_f(field: &Field, b: &FieldElement) -> SolutionSet {
    LinearizedMap::unit(field).solve(&f_target(field, b))
}

/// Tr(gamma^{p^alpha + 1}) for gamma in the solution set of
/// X^{p^{2 alpha}} + X = -b^{p^alpha}; `None` when there is no solution.
/// Fails if two solutions disagree.
pub fn trace_of_solution_class(field: &Field, b: &FieldElement) -> Result<Option<PrimeResidue>> {
    class_of(field, &LinearizedMap::unit(field), b)
}

pub(crate) fn class_of(field: &Field, map: &LinearizedMap<'_>, b: &FieldElement) -> Result<Option<PrimeResidue>> {
    let set = map.solve(&f_target(field, b));
    let mut traces = set.elements().iter().map(|g| field.trace(&field.power_map(g)));
    let Some(first) = traces.next() else {
        return Ok(None);
    };
    if let Some(other) = traces.find(|&t| t != first) {
        return Err(Error::Internal(format!(
            "solutions for b = {b} give traces {first} and {other} of gamma^(p^alpha+1)"
        )));
    }
    Ok(Some(first))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;

    /// Brute oracle: kernel size by evaluating f_a on every element.
    fn brute_kernel_size(field: &Field, map: &LinearizedMap<'_>) -> usize {
        field.elements().filter(|x| map.apply(x).is_zero()).count()
    }

    #[test]
    fn kernel_of_x9_plus_x_over_f81() {
        let field = Field::build(3, 4, 1).unwrap();
        let map = LinearizedMap::unit(&field);
        assert_eq!(brute_kernel_size(&field, &map), 9);
        assert_eq!(map.kernel_dimension(), 2);
        assert!(!map.is_bijective());
        let sols = solve_f(&field, &field.zero());
        assert_eq!(sols.len(), 9);
        // the nine kernel elements share one trace class
        assert_eq!(trace_of_solution_class(&field, &field.zero()).unwrap(), Some(PrimeResidue::zero()));
    }

    #[test]
    fn solutions_satisfy_the_equation() {
        for (p, e, alpha) in [(3, 4, 1), (3, 6, 1), (5, 4, 1), (3, 8, 2)] {
            let field = Field::build(p, e, alpha).unwrap();
            let map = LinearizedMap::unit(&field);
            let sizes = [0usize, 1, field.p_pow_2d()];
            for b in field.elements().step_by(5) {
                let set = solve_f(&field, &b);
                assert!(sizes.contains(&set.len()), "{p} {e} {alpha}: size {}", set.len());
                let target = f_target(&field, &b);
                for g in set.elements() {
                    assert_eq!(map.apply(g), target);
                }
            }
        }
    }

    #[test]
    fn unique_solution_when_md_odd() {
        let field = Field::build(3, 6, 1).unwrap();
        for b in field.elements().step_by(11) {
            assert_eq!(solve_f(&field, &b).len(), 1);
        }
    }

    #[test]
    fn rank_matches_brute_injectivity() {
        for (p, e, alpha) in [(3, 2, 1), (3, 4, 1), (3, 4, 2), (5, 2, 1), (5, 4, 1)] {
            let field = Field::build(p, e, alpha).unwrap();
            for a in field.elements().skip(1) {
                let map = LinearizedMap::new(&field, &a).unwrap();
                let kernel = brute_kernel_size(&field, &map);
                assert_eq!(kernel == 1, map.is_bijective());
                assert_eq!(kernel as u64, (p as u64).pow(map.kernel_dimension() as u32));
            }
        }
    }

    #[test]
    fn zero_coefficient_is_rejected() {
        let field = Field::build(3, 2, 1).unwrap();
        assert!(LinearizedMap::new(&field, &field.zero()).is_err());
    }

    impl Field {
        fn p_pow_2d(&self) -> usize {
            (self.p() as usize).pow(2 * self.params().d())
        }
    }
}
