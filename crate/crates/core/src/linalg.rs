//! Small dense symmetric matrices over a [`Scalar`], with a pivoted LDLᵀ
//! positive-semidefiniteness test. Over `BigRational` every verdict is
//! exact; over floats the same code is a heuristic.

use crate::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Scalar> SymMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    /// Sets entries `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v.clone();
        self.data[j * self.n + i] = v;
    }

    /// Adds `coef · v vᵀ` for a sparse vector `v` given as `(index, entry)`.
    /// Repeated indices are summed.
    pub fn add_outer(&mut self, coef: &T, v: &[(usize, T)]) {
        for (i, a) in v {
            let ca = coef.clone() * a.clone();
            for (j, b) in v {
                let k = i * self.n + j;
                self.data[k] = self.data[k].clone() + ca.clone() * b.clone();
            }
        }
    }

    /// `self + coef · other`.
    pub fn add_scaled(&self, coef: &T, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        Self {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a.clone() + coef.clone() * b.clone())
                .collect(),
        }
    }

    /// `vᵀ M v`.
    pub fn quad_form(&self, v: &[T]) -> T {
        assert_eq!(v.len(), self.n);
        let mut acc = T::zero();
        for i in 0..self.n {
            if v[i].is_zero() {
                continue;
            }
            let mut row = T::zero();
            for j in 0..self.n {
                row = row + self.get(i, j).clone() * v[j].clone();
            }
            acc = acc + v[i].clone() * row;
        }
        acc
    }

    /// Principal submatrix on `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out.data[a * idx.len() + b] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SymMatrix<U> {
        SymMatrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(T::zero(), |acc, j| acc + self.get(i, j).clone() * v[j].clone())
            })
            .collect()
    }
}

/// Outcome of [`psd_check`].
#[derive(Debug, Clone, PartialEq)]
pub enum Definiteness<T> {
    PositiveSemidefinite,
    /// `witness` satisfies `witnessᵀ M witness < 0`.
    Indefinite { witness: Vec<T> },
}

fn abs<T: Scalar>(v: &T) -> T {
    if *v < T::zero() {
        -v.clone()
    } else {
        v.clone()
    }
}

/// Decides `M ⪰ 0` by symmetric Gaussian elimination, always pivoting on
/// the largest remaining diagonal entry. A negative pivot, or a zero
/// diagonal facing a nonzero off-diagonal entry, yields a violating
/// direction, which is lifted back through the eliminated block.
pub fn psd_check<T: Scalar>(m: &SymMatrix<T>) -> Definiteness<T> {
    let n = m.dim();
    let mut work = m.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut eliminated: Vec<usize> = Vec::new();

    loop {
        let Some(&p) = active.iter().reduce(|best, i| {
            if work.get(*i, *i) > work.get(*best, *best) {
                i
            } else {
                best
            }
        }) else {
            return Definiteness::PositiveSemidefinite;
        };
        let pivot = work.get(p, p).clone();
        if pivot < T::zero() {
            return Definiteness::Indefinite {
                witness: lift(m, &eliminated, &[(p, T::one())]),
            };
        }
        if pivot.is_zero() {
            // All remaining diagonals vanish: PSD only if the block is zero.
            for (a, &i) in active.iter().enumerate() {
                for &j in &active[a + 1..] {
                    let s = work.get(i, j).clone();
                    if !s.is_zero() {
                        let t = if s > T::zero() { -T::one() } else { T::one() };
                        return Definiteness::Indefinite {
                            witness: lift(m, &eliminated, &[(i, T::one()), (j, t)]),
                        };
                    }
                }
            }
            return Definiteness::PositiveSemidefinite;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let factor = work.get(i, p).clone() / pivot.clone();
            if factor.is_zero() {
                continue;
            }
            for &j in &active {
                if j < i {
                    continue;
                }
                let v = work.get(i, j).clone() - factor.clone() * work.get(p, j).clone();
                work.set(i, j, v);
            }
        }
        eliminated.push(p);
    }
}

/// Extends a direction `u` on the remaining coordinates to `v` with
/// `v_P = -M_PP⁻¹ M_PR u` on the eliminated block `P`, so that
/// `vᵀ M v` equals the Schur-complement form of `u`.
fn lift<T: Scalar>(m: &SymMatrix<T>, eliminated: &[usize], u: &[(usize, T)]) -> Vec<T> {
    let n = m.dim();
    let mut v = vec![T::zero(); n];
    for (i, t) in u {
        v[*i] = t.clone();
    }
    if eliminated.is_empty() {
        return v;
    }
    let k = eliminated.len();
    let mut a: Vec<Vec<T>> = eliminated
        .iter()
        .map(|&i| eliminated.iter().map(|&j| m.get(i, j).clone()).collect())
        .collect();
    let mut rhs: Vec<T> = eliminated
        .iter()
        .map(|&i| {
            u.iter()
                .fold(T::zero(), |acc, (j, t)| acc - m.get(i, *j).clone() * t.clone())
        })
        .collect();
    let sol = solve(&mut a, &mut rhs);
    debug_assert_eq!(sol.len(), k);
    for (idx, &i) in eliminated.iter().enumerate() {
        v[i] = sol[idx].clone();
    }
    v
}

/// Gaussian elimination with partial pivoting on a nonsingular system.
pub fn solve<T: Scalar>(a: &mut [Vec<T>], b: &mut [T]) -> Vec<T> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| {
                abs(&a[i][col])
                    .partial_cmp(&abs(&a[j][col]))
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        a.swap(col, piv);
        b.swap(col, piv);
        let p = a[col][col].clone();
        for r in col + 1..n {
            let f = a[r][col].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for c in col..n {
                a[r][c] = a[r][c].clone() - f.clone() * a[col][c].clone();
            }
            b[r] = b[r].clone() - f.clone() * b[col].clone();
        }
    }
    let mut x = vec![T::zero(); n];
    for r in (0..n).rev() {
        let mut acc = b[r].clone();
        for c in r + 1..n {
            acc = acc - a[r][c].clone() * x[c].clone();
        }
        x[r] = acc / a[r][r].clone();
    }
    x
}
