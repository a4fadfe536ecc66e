//! Finite matrix groups and their constructions.
//!
//! Groups are materialized as explicit ordered element lists: closures of
//! generator sets (breadth-first, deterministic ordering), the 2x2 dihedral
//! and quaternion irreducibles, permutation representations of the symmetric
//! and alternating groups, scalar cyclic groups, and regular representations
//! built from Cayley tables.
//!
//! Two matrices are the same group element iff their max-norm distance is at
//! most [`TOL_GROUP`]; every constructed entry is either exact or a trig
//! value, so element separation sits far above that threshold.

mod cayley;
mod scalar;

pub use cayley::CayleyTable;
pub use scalar::{classify_scalar, ScalarTag, ScalarType, DEFAULT_DENOMINATOR_CAP};

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{ComplexMatrix, LinalgError};
use crate::regions::root_of_unity;

/// Max-norm identity threshold for group elements.
pub const TOL_GROUP: f64 = 1e-9;

/// Default cap on materialized elements for permutation groups.
pub const DEFAULT_ELEMENT_CAP: usize = 5040;

#[derive(Debug, Clone, Error)]
pub enum GroupError {
    #[error("generator list is empty")]
    EmptyGenerators,
    #[error("generator {index} has dimension {actual}, expected {expected}")]
    GeneratorDimMismatch {
        index: usize,
        expected: usize,
        actual: usize,
    },
    #[error("generator {index} is not invertible within tolerance (|det| = {det:.3e})")]
    NotInvertible { index: usize, det: f64 },
    #[error("closure exceeded {max_order} elements: possibly infinite group")]
    PossiblyInfinite { max_order: usize },
    #[error("closure produced non-finite entries after {order} elements: unbounded group")]
    UnboundedClosure { order: usize },
    #[error("group would have {required} elements, above the cap of {cap}")]
    ElementCapExceeded { required: u128, cap: usize },
    #[error("invalid Cayley table: {reason}")]
    InvalidCayley { reason: String },
    #[error("group axiom violated: {detail}")]
    AxiomViolation { detail: String },
    #[error("scalar to classify must be nonzero")]
    ZeroScalar,
    #[error("{what}")]
    BadParameter { what: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which permutations to materialize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermutationKind {
    Symmetric,
    Alternating,
}

/// A finite matrix group as an explicit ordered list of distinct elements.
///
/// Element 0 is always the identity. Values are immutable once constructed
/// and freely shareable across threads.
#[derive(Debug, Clone)]
pub struct MatrixGroup {
    name: String,
    dim: usize,
    elements: Vec<ComplexMatrix>,
    generators: Vec<usize>,
}

impl MatrixGroup {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, index: usize) -> &ComplexMatrix {
        &self.elements[index]
    }

    pub fn elements(&self) -> &[ComplexMatrix] {
        &self.elements
    }

    /// Indices of a generating set, when one is known. Empty for groups
    /// materialized by direct enumeration.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Index of the element equal to `m` within [`TOL_GROUP`], if any.
    pub fn find_element(&self, m: &ComplexMatrix) -> Option<usize> {
        if m.dim() != self.dim {
            return None;
        }
        self.elements
            .iter()
            .position(|e| e.max_norm_distance(m) <= TOL_GROUP)
    }

    /// Multiplication table as row-major indices: entry `(g, h)` is the
    /// element index of `element(g) * element(h)`. Fails if some product
    /// falls outside the element list, i.e. the list is not closed.
    pub fn multiplication_table(&self) -> Result<Vec<usize>, GroupError> {
        let n = self.order();
        let mut table = vec![0usize; n * n];
        for g in 0..n {
            for h in 0..n {
                let product = self.elements[g].mul(&self.elements[h])?;
                let idx =
                    self.find_element(&product)
                        .ok_or_else(|| GroupError::AxiomViolation {
                            detail: format!("product of elements {g} and {h} is not in the group"),
                        })?;
                table[g * n + h] = idx;
            }
        }
        Ok(table)
    }

    /// Full structural validation: identity position, pairwise distinctness,
    /// closure, and inverse existence. Quadratic in the order; intended for
    /// desk-scale groups and tests.
    pub fn validate(&self) -> Result<(), GroupError> {
        if self.elements.is_empty() {
            return Err(GroupError::AxiomViolation {
                detail: "group has no elements".into(),
            });
        }
        let identity = ComplexMatrix::identity(self.dim);
        if self.elements[0].max_norm_distance(&identity) > TOL_GROUP {
            return Err(GroupError::AxiomViolation {
                detail: "element 0 is not the identity".into(),
            });
        }
        let n = self.order();
        for i in 0..n {
            for j in i + 1..n {
                if self.elements[i].max_norm_distance(&self.elements[j]) <= TOL_GROUP {
                    return Err(GroupError::AxiomViolation {
                        detail: format!("elements {i} and {j} coincide within tolerance"),
                    });
                }
            }
        }
        let table = self.multiplication_table()?;
        for g in 0..n {
            if !(0..n).any(|h| table[g * n + h] == 0) {
                return Err(GroupError::AxiomViolation {
                    detail: format!("element {g} has no inverse in the group"),
                });
            }
        }
        Ok(())
    }

    fn from_parts(
        name: String,
        dim: usize,
        elements: Vec<ComplexMatrix>,
        generators: Vec<usize>,
    ) -> Self {
        Self {
            name,
            dim,
            elements,
            generators,
        }
    }
}

/// Breadth-first closure of a generator set under left multiplication.
///
/// Element ordering is deterministic: the identity first, then discovery
/// order by word length with generators applied on the left. Exceeding
/// `max_order` aborts with [`GroupError::PossiblyInfinite`], the expected
/// outcome for generators of infinite order.
pub fn close_group(
    generators: &[ComplexMatrix],
    max_order: usize,
) -> Result<MatrixGroup, GroupError> {
    if generators.is_empty() {
        return Err(GroupError::EmptyGenerators);
    }
    if max_order == 0 {
        return Err(GroupError::BadParameter {
            what: "max_order must be at least 1".into(),
        });
    }
    let dim = generators[0].dim();
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != dim {
            return Err(GroupError::GeneratorDimMismatch {
                index,
                expected: dim,
                actual: g.dim(),
            });
        }
        let det = g.determinant().norm();
        if det < TOL_GROUP {
            return Err(GroupError::NotInvertible { index, det });
        }
    }

    let mut elements = vec![ComplexMatrix::identity(dim)];
    let find = |elements: &[ComplexMatrix], m: &ComplexMatrix| -> Option<usize> {
        elements
            .iter()
            .position(|e| e.max_norm_distance(m) <= TOL_GROUP)
    };

    let mut frontier = 0usize;
    while frontier < elements.len() {
        let current = elements[frontier].clone();
        for g in generators {
            let product = g.mul(&current)?;
            if !product.is_finite() {
                return Err(GroupError::UnboundedClosure {
                    order: elements.len(),
                });
            }
            if find(&elements, &product).is_none() {
                if elements.len() >= max_order {
                    return Err(GroupError::PossiblyInfinite { max_order });
                }
                elements.push(product);
            }
        }
        frontier += 1;
    }

    let generator_indices: Vec<usize> = generators
        .iter()
        .filter_map(|g| find(&elements, g))
        .collect();

    let group = MatrixGroup::from_parts("generated".into(), dim, elements, generator_indices);
    verify_closure(&group)?;
    Ok(group)
}

/// Closure/inverse verification after construction. Full multiplication
/// table for small orders, deterministic spot checks beyond that.
fn verify_closure(group: &MatrixGroup) -> Result<(), GroupError> {
    let n = group.order();
    if n <= 256 {
        let table = group.multiplication_table()?;
        for g in 0..n {
            if !(0..n).any(|h| table[g * n + h] == 0) {
                return Err(GroupError::AxiomViolation {
                    detail: format!("element {g} has no inverse in the closure"),
                });
            }
        }
    } else {
        let step = (n / 16).max(1);
        for g in (0..n).step_by(step) {
            for h in (0..n).step_by(step) {
                let product = group.elements[g].mul(&group.elements[h])?;
                if group.find_element(&product).is_none() {
                    return Err(GroupError::AxiomViolation {
                        detail: format!("sampled product ({g}, {h}) escaped the closure"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// The 2x2 dihedral representation generated by rotation through `2πk/n`
/// and the coordinate swap. Irreducible for `1 ≤ k ≤ (n-1)/2`; larger `k`
/// are accepted and produce the same groups as their reduced counterparts.
/// The group order is `2·n/gcd(n,k)`.
pub fn dihedral_irrep(n: u32, k: u32) -> Result<MatrixGroup, GroupError> {
    if n < 3 {
        return Err(GroupError::BadParameter {
            what: format!("dihedral parameter n must be at least 3, got {n}"),
        });
    }
    if k == 0 {
        return Err(GroupError::BadParameter {
            what: "dihedral parameter k must be at least 1".into(),
        });
    }
    let root = root_of_unity(k % n, n);
    let (c, s) = (root.re, root.im);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let rotation = ComplexMatrix::new(
        2,
        vec![
            Complex64::new(c, 0.0),
            Complex64::new(-s, 0.0),
            Complex64::new(s, 0.0),
            Complex64::new(c, 0.0),
        ],
    )?;
    let swap = ComplexMatrix::new(2, vec![zero, one, one, zero])?;
    let group = close_group(&[rotation, swap], 2 * n as usize)?;
    Ok(group.renamed(format!("dihedral:{n}:{k}")))
}

/// The 2x2 irreducible of the quaternion group: `r = diag(i, -i)`,
/// `s = [[0, -1], [1, 0]]`. Order 8.
pub fn quaternion_irrep() -> MatrixGroup {
    let i = Complex64::new(0.0, 1.0);
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let r = ComplexMatrix::new(2, vec![i, zero, zero, -i]).expect("static entries");
    let s = ComplexMatrix::new(2, vec![zero, -one, one, zero]).expect("static entries");
    close_group(&[r, s], 8)
        .expect("quaternion closure is finite")
        .renamed("quaternion")
}

/// Scalar cyclic group of the n-th roots of unity as 1x1 matrices, ordered
/// by exponent.
pub fn cyclic_scalar_group(n: u32) -> Result<MatrixGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter {
            what: "cyclic order must be at least 1".into(),
        });
    }
    let elements: Vec<ComplexMatrix> = (0..n)
        .map(|j| ComplexMatrix::new(1, vec![root_of_unity(j, n)]).expect("finite entries"))
        .collect();
    let generators = if n > 1 { vec![1] } else { Vec::new() };
    Ok(MatrixGroup::from_parts(
        format!("cyclic:{n}"),
        1,
        elements,
        generators,
    ))
}

/// Permutation matrix with entry `(i, perm[i]) = 1`: row `i` carries the
/// image of `i`.
pub fn permutation_matrix(perm: &[usize]) -> ComplexMatrix {
    let n = perm.len();
    ComplexMatrix::from_fn(n, |i, j| {
        if perm[i] == j {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// True when the permutation is even (product of an even number of
/// transpositions).
pub fn permutation_parity_even(perm: &[usize]) -> bool {
    let mut seen = vec![false; perm.len()];
    let mut transpositions = 0usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        transpositions += len - 1;
    }
    transpositions % 2 == 0
}

/// Cycle lengths of a permutation, in discovery order.
pub fn cycle_lengths(perm: &[usize]) -> Vec<usize> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0usize;
        let mut at = start;
        while !seen[at] {
            seen[at] = true;
            at = perm[at];
            len += 1;
        }
        lengths.push(len);
    }
    lengths
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// All permutation matrices of `S_n`, or the even ones for `A_n`, in
/// lexicographic order of the underlying permutations (identity first).
pub fn permutation_group(n: usize, kind: PermutationKind) -> Result<MatrixGroup, GroupError> {
    permutation_group_with_cap(n, kind, DEFAULT_ELEMENT_CAP)
}

pub fn permutation_group_with_cap(
    n: usize,
    kind: PermutationKind,
    cap: usize,
) -> Result<MatrixGroup, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter {
            what: "permutation degree must be at least 1".into(),
        });
    }
    let required = match kind {
        PermutationKind::Symmetric => factorial(n),
        PermutationKind::Alternating => {
            if n <= 2 {
                1
            } else {
                factorial(n) / 2
            }
        }
    };
    if required > cap as u128 {
        return Err(GroupError::ElementCapExceeded { required, cap });
    }

    let mut perms: Vec<Vec<usize>> = Vec::with_capacity(required as usize);
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let keep = match kind {
            PermutationKind::Symmetric => true,
            PermutationKind::Alternating => permutation_parity_even(&perm),
        };
        if keep {
            perms.push(perm.clone());
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }

    let elements: Vec<ComplexMatrix> = perms.iter().map(|p| permutation_matrix(p)).collect();
    let find_perm = |target: &[usize]| perms.iter().position(|p| p == target);
    let mut generators = Vec::new();
    match kind {
        PermutationKind::Symmetric if n >= 2 => {
            let mut swap: Vec<usize> = (0..n).collect();
            swap.swap(0, 1);
            let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
            generators.extend(find_perm(&swap));
            if n > 2 {
                generators.extend(find_perm(&cycle));
            }
        }
        PermutationKind::Alternating if n >= 3 => {
            let mut three: Vec<usize> = (0..n).collect();
            three[0] = 1;
            three[1] = 2;
            three[2] = 0;
            generators.extend(find_perm(&three));
            if n >= 4 {
                let long: Vec<usize> = if n % 2 == 1 {
                    (0..n).map(|i| (i + 1) % n).collect()
                } else {
                    // cycle on 1..n fixing 0 keeps the generator even
                    (0..n)
                        .map(|i| if i == 0 { 0 } else { i % (n - 1) + 1 })
                        .collect()
                };
                generators.extend(find_perm(&long));
            }
        }
        _ => {}
    }
    generators.sort_unstable();
    generators.dedup();

    let label = match kind {
        PermutationKind::Symmetric => format!("sym:{n}"),
        PermutationKind::Alternating => format!("alt:{n}"),
    };
    Ok(MatrixGroup::from_parts(label, n, elements, generators))
}

/// Left regular representation built from a Cayley table: element `g` maps
/// basis vector `e_h` to `e_{g·h}`, giving `order`-sized permutation
/// matrices indexed exactly like the table.
pub fn regular_representation(table: &CayleyTable) -> MatrixGroup {
    let order = table.order();
    let elements: Vec<ComplexMatrix> = (0..order)
        .map(|g| {
            ComplexMatrix::from_fn(order, |i, h| {
                if table.product(g, h) == i {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
        })
        .collect();
    MatrixGroup::from_parts(
        format!("regrep({})", table.label()),
        order,
        elements,
        Vec::new(),
    )
}

/// Arithmetic mean of all group elements. Idempotent within roundoff, and
/// zero for every nontrivial irreducible representation.
pub fn group_average(group: &MatrixGroup) -> ComplexMatrix {
    let mut sum = ComplexMatrix::zeros(group.dim());
    for e in group.elements() {
        sum = sum.add(e).expect("uniform dimension");
    }
    sum.scale_real(1.0 / group.order() as f64)
}
