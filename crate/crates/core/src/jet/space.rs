use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

/// Monomial bookkeeping for truncated Taylor series in `n_vars` variables.
///
/// Monomials are ordered by total degree, so the monomials of a lower-degree space
/// over the same variables form a prefix of this one.
#[derive(Debug)]
pub struct JetSpace {
    n_vars: usize,
    degree: usize,
    monomials: Vec<Vec<u8>>,
    /// `degree_end[d]` = number of monomials of total degree `<= d`.
    degree_end: Vec<usize>,
    index: HashMap<Vec<u8>, usize>,
    /// `mul[i][j]` = index of `m_i * m_j` for `j < degree_end[degree - |m_i|]`.
    mul: Vec<Vec<u32>>,
    /// `deriv[v][k]` = `(index of m_k / t_v, exponent)` when `t_v` divides `m_k`.
    deriv: Vec<Vec<Option<(u32, f64)>>>,
    /// `shift[v][k]` = index of `t_v * m_k` when it stays within the degree.
    shift: Vec<Vec<Option<u32>>>,
    lifted: OnceLock<Arc<JetSpace>>,
}

fn monomials_of_degree(n: usize, d: usize, out: &mut Vec<Vec<u8>>) {
    fn rec(n: usize, left: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == n - 1 {
            cur.push(left as u8);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for e in (0..=left).rev() {
            cur.push(e as u8);
            rec(n, left - e, cur, out);
            cur.pop();
        }
    }
    rec(n, d, &mut Vec::with_capacity(n), out);
}

impl JetSpace {
    pub fn new(n_vars: usize, degree: usize) -> Arc<Self> {
        assert!(n_vars > 0, "jet space needs at least one variable");
        let mut monomials = Vec::new();
        let mut degree_end = Vec::with_capacity(degree + 1);
        for d in 0..=degree {
            monomials_of_degree(n_vars, d, &mut monomials);
            degree_end.push(monomials.len());
        }
        let index: HashMap<Vec<u8>, usize> =
            monomials.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let deg = |m: &[u8]| m.iter().map(|&e| e as usize).sum::<usize>();

        let mut mul = Vec::with_capacity(monomials.len());
        for mi in &monomials {
            let room = degree - deg(mi);
            let row = monomials[..degree_end[room]]
                .iter()
                .map(|mj| {
                    let prod: Vec<u8> = mi.iter().zip(mj).map(|(a, b)| a + b).collect();
                    index[&prod] as u32
                })
                .collect();
            mul.push(row);
        }

        let mut deriv = vec![vec![None; monomials.len()]; n_vars];
        let mut shift = vec![vec![None; monomials.len()]; n_vars];
        for (k, m) in monomials.iter().enumerate() {
            for v in 0..n_vars {
                if m[v] > 0 {
                    let mut lower = m.clone();
                    lower[v] -= 1;
                    deriv[v][k] = Some((index[&lower] as u32, m[v] as f64));
                }
                if deg(m) < degree {
                    let mut upper = m.clone();
                    upper[v] += 1;
                    shift[v][k] = Some(index[&upper] as u32);
                }
            }
        }

        Arc::new(Self { n_vars, degree, monomials, degree_end, index, mul, deriv, shift, lifted: OnceLock::new() })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of stored coefficients.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial(&self, k: usize) -> &[u8] {
        &self.monomials[k]
    }

    pub fn index_of(&self, exps: &[u8]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    /// Number of monomials of total degree `<= d`.
    pub fn count_upto(&self, d: usize) -> usize {
        self.degree_end[d.min(self.degree)]
    }

    pub fn total_degree(&self, k: usize) -> usize {
        self.degree_end.iter().position(|&e| k < e).expect("monomial index in range")
    }

    pub(crate) fn mul_row(&self, i: usize) -> &[u32] {
        &self.mul[i]
    }

    pub(crate) fn deriv_table(&self, v: usize) -> &[Option<(u32, f64)>] {
        &self.deriv[v]
    }

    pub(crate) fn shift_table(&self, v: usize) -> &[Option<u32>] {
        &self.shift[v]
    }

    /// The same variables at one degree higher, built on first use. Functions that
    /// need an exact derivative are evaluated there and truncated back.
    pub fn lifted(&self) -> Arc<JetSpace> {
        self.lifted.get_or_init(|| JetSpace::new(self.n_vars, self.degree + 1)).clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_match_binomials() {
        let s = JetSpace::new(5, 6);
        assert_eq!(s.len(), 462);
        let s = JetSpace::new(8, 3);
        assert_eq!(s.len(), 165);
        assert_eq!(s.count_upto(1), 9);
    }

    #[test]
    fn lower_degree_is_prefix() {
        let a = JetSpace::new(3, 4);
        let b = a.lifted();
        for k in 0..a.len() {
            assert_eq!(a.monomial(k), b.monomial(k));
        }
    }
}
