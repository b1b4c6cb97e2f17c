use super::OdeError;
use crate::linalg::SymTridiagonal;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EigenMethod {
    /// Full spectrum by implicit QL.
    Ql,
    /// Single eigenvalues by Sturm-sequence bisection.
    Sturm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSettings {
    /// Cells on the coarsest grid.
    pub base_cells: usize,
    /// Refinement stops once the grid would exceed this many cells.
    pub max_cells: usize,
    /// Target for the Richardson error estimate.
    pub target: f64,
    /// Multiplies the default cutoff.
    pub cutoff_scale: f64,
    pub method: EigenMethod,
}

impl Default for GridSettings {
    fn default() -> Self {
        Self { base_cells: 256, max_cells: 4096, target: 1e-7, cutoff_scale: 1.0, method: EigenMethod::Ql }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenResult {
    pub index: usize,
    /// Value on the finest grid.
    pub eigenvalue: f64,
    pub cells: usize,
    pub extrapolated: f64,
    pub error_estimate: f64,
    /// Raw values on each grid, coarsest first.
    pub levels: Vec<f64>,
    /// Error estimate after each refinement beyond the second grid.
    pub error_history: Vec<f64>,
}

/// `-(P g')' + Q g = lambda W g` on `(0, cutoff]` with `P(0) = 0`.
pub struct SturmLiouville<'a> {
    pub p: Box<dyn Fn(f64) -> f64 + 'a>,
    pub q: Box<dyn Fn(f64) -> f64 + 'a>,
    pub w: Box<dyn Fn(f64) -> f64 + 'a>,
    pub cutoff: f64,
}

impl SturmLiouville<'_> {
    /// Symmetrized cell-centred discretization with `cells` unknowns at `(i + 1/2) h`.
    pub fn discretize(&self, cells: usize) -> SymTridiagonal {
        let h = self.cutoff / cells as f64;
        let h2 = h * h;
        let face = |i: usize| if i == 0 { 0.0 } else { (self.p)(i as f64 * h) };
        let mut diag = Vec::with_capacity(cells);
        let mut off = Vec::with_capacity(cells.saturating_sub(1));
        let weights: Vec<f64> = (0..cells).map(|i| (self.w)((i as f64 + 0.5) * h)).collect();
        for i in 0..cells {
            let x = (i as f64 + 0.5) * h;
            let d = (face(i) + face(i + 1)) / h2 + (self.q)(x);
            diag.push(d / weights[i]);
            if i + 1 < cells {
                off.push(-face(i + 1) / h2 / (weights[i] * weights[i + 1]).sqrt());
            }
        }
        SymTridiagonal::new(diag, off)
    }

    pub fn eigenvalues(&self, cells: usize, count: usize, method: EigenMethod) -> Result<Vec<f64>, OdeError> {
        let t = self.discretize(cells);
        match method {
            EigenMethod::Ql => Ok(t.eigenvalues()?.into_iter().take(count).collect()),
            EigenMethod::Sturm => (0..count).map(|k| t.kth_eigenvalue(k).map_err(OdeError::from)).collect(),
        }
    }

    /// Lowest `count` eigenvalues on successively halved grids, Richardson-extrapolated.
    pub fn solve(&self, count: usize, settings: &GridSettings) -> Result<Vec<EigenResult>, OdeError> {
        let mut cells = settings.base_cells;
        let mut per_level: Vec<Vec<f64>> = Vec::new();
        let results = loop {
            per_level.push(self.eigenvalues(cells, count, settings.method)?);
            if per_level.len() >= 3 {
                let results: Vec<EigenResult> = (0..count)
                    .map(|k| {
                        let levels: Vec<f64> = per_level.iter().map(|l| l[k]).collect();
                        let (extrapolated, error_history) = richardson(&levels);
                        EigenResult {
                            index: k,
                            eigenvalue: *levels.last().unwrap(),
                            cells,
                            extrapolated,
                            error_estimate: *error_history.last().unwrap(),
                            levels,
                            error_history,
                        }
                    })
                    .collect();
                let worst = results.iter().map(|r| r.error_estimate).fold(0.0, f64::max);
                if worst <= settings.target || cells * 2 > settings.max_cells {
                    if worst > settings.target {
                        return Err(OdeError::GridTooCoarse { error: worst, target: settings.target, cells });
                    }
                    break results;
                }
            }
            cells *= 2;
            if cells > settings.max_cells && per_level.len() < 3 {
                return Err(OdeError::GridTooCoarse { error: f64::INFINITY, target: settings.target, cells: cells / 2 });
            }
        };
        Ok(results)
    }
}

/// Romberg extrapolation of values on grids `h, h/2, h/4, ...` assuming an even
/// error expansion in `h`. Returns the top diagonal entry and the successive
/// differences of the diagonal, used as error estimates.
pub fn richardson(values: &[f64]) -> (f64, Vec<f64>) {
    let n = values.len();
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = vec![values[i]];
        for j in 1..=i {
            let f = 4f64.powi(j as i32);
            let prev = row[j - 1];
            let up = table[i - 1][j - 1];
            row.push(prev + (prev - up) / (f - 1.0));
        }
        table.push(row);
    }
    let diag: Vec<f64> = (0..n).map(|i| table[i][i]).collect();
    let errors: Vec<f64> = diag.windows(2).skip(1).map(|w| (w[1] - w[0]).abs()).collect();
    let errors = if errors.is_empty() { vec![f64::INFINITY] } else { errors };
    (*diag.last().unwrap(), errors)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn richardson_removes_quadratic_and_quartic_terms() {
        let f = |h: f64| 1.0 + 0.3 * h * h - 0.2 * h.powi(4);
        let vals: Vec<f64> = (0..3).map(|i| f(0.1 / 2f64.powi(i))).collect();
        let (x, err) = richardson(&vals);
        assert!((x - 1.0).abs() < 1e-14);
        assert!(err[0] < 1e-4);
    }

    #[test]
    fn cylinder_bessel_like_operator() {
        // -(x g')' + (x/4) g = lambda g on (0, inf): lambda = n + 1/2 (Laguerre).
        let sl = SturmLiouville {
            p: Box::new(|x| x),
            q: Box::new(|x| x / 4.0),
            w: Box::new(|_| 1.0),
            cutoff: 60.0,
        };
        let res = sl.solve(3, &GridSettings::default()).unwrap();
        for (n, r) in res.iter().enumerate() {
            assert!((r.extrapolated - (n as f64 + 0.5)).abs() < 1e-7, "{n}: {}", r.extrapolated);
        }
    }
}
