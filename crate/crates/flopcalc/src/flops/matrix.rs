use crate::coeff::{MultiPoly, ParamRing, ParseError};

/// Dense matrix over a commutative polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    nvars: usize,
    entries: Vec<MultiPoly>,
}

impl Matrix {
    pub fn zero(nvars: usize, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, nvars, entries: vec![MultiPoly::zero(nvars); rows * cols] }
    }

    pub fn scalar(n: usize, c: &MultiPoly) -> Self {
        let mut m = Self::zero(c.nvars(), n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        Self::scalar(n, &MultiPoly::one(nvars))
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix { rows: r, cols: c, nvars, entries: rows.into_iter().flatten().collect() }
    }

    /// Parses rows of entry expressions over `ring`.
    pub fn parse<S: AsRef<str>>(ring: &ParamRing, rows: &[Vec<S>]) -> Result<Self, ParseError> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|e| ring.parse_poly(e.as_ref())).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_rows(ring.len(), parsed))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: MultiPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[MultiPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(MultiPoly::is_zero)
    }

    pub fn map(&self, f: impl Fn(&MultiPoly) -> MultiPoly) -> Self {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect();
        let nvars = entries.first().map_or(self.nvars, MultiPoly::nvars);
        Matrix { rows: self.rows, cols: self.cols, nvars, entries }
    }

    pub fn try_map<E>(&self, f: impl Fn(&MultiPoly) -> Result<MultiPoly, E>) -> Result<Self, E> {
        let entries: Vec<MultiPoly> = self.entries.iter().map(f).collect::<Result<_, _>>()?;
        let nvars = entries.first().map_or(self.nvars, MultiPoly::nvars);
        Ok(Matrix { rows: self.rows, cols: self.cols, nvars, entries })
    }

    pub fn neg(&self) -> Self {
        self.map(MultiPoly::neg)
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols), "shape mismatch");
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        Matrix { entries, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "shape mismatch");
        let mut out = Self::zero(self.nvars, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let pairs = (0..self.cols).map(|k| (self.get(i, k), o.get(k, j))).filter(|(a, b)| !a.is_zero() && !b.is_zero());
                let acc = MultiPoly::sum_of_products(self.nvars, pairs);
                out.set(i, j, acc);
            }
        }
        out
    }

    /// `D M D⁻¹` for a diagonal sign matrix D.
    pub fn conjugate_signs(&self, signs: &[i64]) -> Self {
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                if signs[i] * signs[j] < 0 {
                    out.set(i, j, self.get(i, j).neg());
                }
            }
        }
        out
    }

    pub fn show_rows(&self, ring: &ParamRing) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|p| ring.show_poly(p)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_sign_conjugation() {
        let r = ParamRing::new(&["x", "y"]);
        let m = Matrix::parse(&r, &[vec!["x", "y"], vec!["1", "0"]]).unwrap();
        let sq = m.mul(&m);
        assert_eq!(sq, Matrix::parse(&r, &[vec!["x^2 + y", "x*y"], vec!["x", "y"]]).unwrap());
        let d = m.conjugate_signs(&[1, -1]);
        assert_eq!(d, Matrix::parse(&r, &[vec!["x", "-y"], vec!["-1", "0"]]).unwrap());
        assert!(m.sub(&m).is_zero());
    }
}
