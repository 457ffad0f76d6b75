//! Minimal complex arithmetic over `rug::Float`, enough for symbol evaluation.

use rug::Float;

#[derive(Clone, Debug)]
pub(crate) struct Complex {
    pub re: Float,
    pub im: Float,
}

impl Complex {
    /// e^{iθ}
    pub fn unit(theta: &Float) -> Self {
        let (s, c) = theta.clone().sin_cos(Float::new(theta.prec()));
        Complex { re: c, im: s }
    }

    fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn conj(&self) -> Self {
        Complex { re: self.re.clone(), im: Float::with_val(self.prec(), -&self.im) }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec();
        let re = Float::with_val(p, &self.re * &o.re) - Float::with_val(p, &self.im * &o.im);
        let im = Float::with_val(p, &self.re * &o.im) + Float::with_val(p, &self.im * &o.re);
        Complex { re, im }
    }

    pub fn scale(&self, f: &Float) -> Self {
        let p = self.prec();
        Complex { re: Float::with_val(p, &self.re * f), im: Float::with_val(p, &self.im * f) }
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        Float::with_val(p, &self.re * &self.re) + Float::with_val(p, &self.im * &self.im)
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        self.mul(&o.conj()).scale(&(1 / d))
    }

    /// 1 − a·z
    pub fn one_minus(a: &Float, z: &Self) -> Self {
        let p = z.prec();
        Complex { re: 1 - Float::with_val(p, a * &z.re), im: -Float::with_val(p, a * &z.im) }
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        let r = self.norm_sqr().sqrt();
        let re = (Float::with_val(p, &r + &self.re) / 2u32).sqrt();
        let mut im = (Float::with_val(p, &r - &self.re) / 2u32).sqrt();
        if self.im < 0 {
            im = -im;
        }
        Complex { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sqrt_squares_back() {
        let z = Complex { re: Float::with_val(100, -0.3), im: Float::with_val(100, -1.7) };
        let r = z.sqrt();
        assert!(r.re > 0);
        let back = r.mul(&r);
        assert!((back.re.to_f64() + 0.3).abs() < 1e-25 && (back.im.to_f64() + 1.7).abs() < 1e-25);
        let q = back.div(&z);
        assert!((q.re.to_f64() - 1.0).abs() < 1e-25 && q.im.to_f64().abs() < 1e-25);
    }
}
