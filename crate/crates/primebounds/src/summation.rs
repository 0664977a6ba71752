//! Compensated accumulation.

/// Neumaier's variant of Kahan summation: the running compensation also
/// captures the low bits of the accumulator when an addend dominates it.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    /// Best double approximation of the accumulated value.
    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }

    /// The accumulated value minus `y`, with the subtraction done before the
    /// compensation is folded in (exact when `sum` and `y` are close).
    #[inline]
    pub fn minus(&self, y: f64) -> f64 {
        (self.sum - y) + self.comp
    }
}

impl std::iter::FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}
