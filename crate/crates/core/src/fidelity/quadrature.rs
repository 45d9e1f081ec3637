//! Compensated summation and the periodic trapezoid rule.

use std::f64::consts::TAU;

/// Neumaier's variant of Kahan summation.
#[derive(Clone, Copy, Debug, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl Extend<f64> for NeumaierSum {
    fn extend<I: IntoIterator<Item = f64>>(&mut self, iter: I) {
        for x in iter {
            self.add(x);
        }
    }
}

pub fn neumaier_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    acc.extend(values);
    acc.value()
}

/// Nodes `2πk/n`, `k = 0 … n−1`.
pub fn periodic_nodes(n: usize) -> Vec<f64> {
    (0..n).map(|k| TAU * k as f64 / n as f64).collect()
}

/// Mean of `f` over `[0, 2π)` with `n` equispaced nodes.
///
/// Exact for trigonometric polynomials of degree below `n`.
pub fn periodic_trapezoid<F: FnMut(f64) -> f64>(n: usize, mut f: F) -> f64 {
    neumaier_sum(periodic_nodes(n).into_iter().map(&mut f)) / n as f64
}

/// Mean of `f` over `[0, 2π)³` on an `n × n × n` tensor grid, summed in
/// lexicographic `(x, y, z)` order.
pub fn periodic_trapezoid_3d<F: FnMut(f64, f64, f64) -> f64>(n: usize, mut f: F) -> f64 {
    let nodes = periodic_nodes(n);
    let mut acc = NeumaierSum::new();
    for &x in &nodes {
        for &y in &nodes {
            for &z in &nodes {
                acc.add(f(x, y, z));
            }
        }
    }
    acc.value() / (n * n * n) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let xs = [1.0, 1e100, 1.0, -1e100];
        assert_eq!(neumaier_sum(xs), 2.0);
        assert_eq!(xs.iter().sum::<f64>(), 0.0);
        let many = std::iter::repeat_n(0.1, 1_000_000);
        assert!((neumaier_sum(many) - 100_000.0).abs() < 1e-9);
    }

    #[test]
    fn trig_means() {
        // ⟨cos²x⟩ = 1/2, ⟨cos⁴x⟩ = 3/8, ⟨sin²x cos²x⟩ = 1/8
        for n in [5, 8, 13, 48] {
            assert!((periodic_trapezoid(n, |x| x.cos().powi(2)) - 0.5).abs() < 1e-15);
            assert!((periodic_trapezoid(n, |x| x.cos().powi(4)) - 0.375).abs() < 1e-15);
            assert!((periodic_trapezoid(n, |x| (x.sin() * x.cos()).powi(2)) - 0.125).abs() < 1e-15);
        }
        // degree 4 needs n > 4
        assert!((periodic_trapezoid(4, |x| x.cos().powi(4)) - 0.375).abs() > 0.1);
    }

    #[test]
    fn smooth_periodic_converges_spectrally() {
        // ⟨e^{cos x}⟩ = I₀(1)
        let i0 = 1.266_065_877_752_008_4;
        assert!((periodic_trapezoid(16, |x| x.cos().exp()) - i0).abs() < 1e-14);
    }

    #[test]
    fn separable_3d() {
        let v = periodic_trapezoid_3d(12, |x, y, z| (x.cos() * y.sin() * z.cos()).powi(2));
        assert!((v - 0.125).abs() < 1e-15);
        let v = periodic_trapezoid_3d(8, |x, y, z| 1.0 + (x + 2.0 * y - z).cos());
        assert!((v - 1.0).abs() < 1e-15);
    }
}
