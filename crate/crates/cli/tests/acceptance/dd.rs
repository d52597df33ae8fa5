//! Double-double (~31 significant digits) real and complex arithmetic for
//! the extended-precision reference summation. Independent of the crate
//! under test.

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, f64::mul_add(a, b, -p))
}

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    pub fn from_f64(x: f64) -> Dd {
        Dd { hi: x, lo: 0.0 }
    }

    /// Pi to double-double precision (high word plus correction term).
    pub fn pi() -> Dd {
        Dd {
            hi: std::f64::consts::PI,
            lo: 1.2246467991473532e-16,
        }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }

    pub fn add(self, other: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, other.hi);
        let e = e + self.lo + other.lo;
        let (hi, lo) = quick_two_sum(s, e);
        Dd { hi, lo }
    }

    pub fn sub(self, other: Dd) -> Dd {
        self.add(other.neg())
    }

    pub fn mul(self, other: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, other.hi);
        let e = e + self.hi * other.lo + self.lo * other.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn mul_f64(self, x: f64) -> Dd {
        let (p, e) = two_prod(self.hi, x);
        let e = e + self.lo * x;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    pub fn div(self, other: Dd) -> Dd {
        let q1 = self.hi / other.hi;
        let r = self.sub(other.mul_f64(q1));
        let q2 = r.hi / other.hi;
        let r2 = r.sub(other.mul_f64(q2));
        let q3 = r2.hi / other.hi;
        let (s, e) = quick_two_sum(q1, q2);
        let (hi, lo) = quick_two_sum(s, e + q3);
        Dd { hi, lo }
    }

    pub fn powi(self, mut n: u32) -> Dd {
        let mut base = self;
        let mut acc = Dd::from_f64(1.0);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            n >>= 1;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DdC {
    pub re: Dd,
    pub im: Dd,
}

impl DdC {
    pub const ZERO: DdC = DdC {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    pub fn new(re: f64, im: f64) -> DdC {
        DdC {
            re: Dd::from_f64(re),
            im: Dd::from_f64(im),
        }
    }

    pub fn add(self, other: DdC) -> DdC {
        DdC {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }

    pub fn sub(self, other: DdC) -> DdC {
        DdC {
            re: self.re.sub(other.re),
            im: self.im.sub(other.im),
        }
    }

    pub fn mul(self, other: DdC) -> DdC {
        DdC {
            re: self.re.mul(other.re).sub(self.im.mul(other.im)),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    pub fn mul_dd(self, x: Dd) -> DdC {
        DdC {
            re: self.re.mul(x),
            im: self.im.mul(x),
        }
    }

    pub fn mul_f64(self, x: f64) -> DdC {
        DdC {
            re: self.re.mul_f64(x),
            im: self.im.mul_f64(x),
        }
    }

    pub fn div(self, other: DdC) -> DdC {
        let denom = other.re.mul(other.re).add(other.im.mul(other.im));
        let num = self.mul(DdC {
            re: other.re,
            im: other.im.neg(),
        });
        DdC {
            re: num.re.div(denom),
            im: num.im.div(denom),
        }
    }
}

#[test]
fn dd_arithmetic_sanity() {
    // 1/3 in dd is accurate far beyond f64.
    let third = Dd::from_f64(1.0).div(Dd::from_f64(3.0));
    let three_thirds = third.mul_f64(3.0);
    assert!((three_thirds.to_f64() - 1.0).abs() < 1e-30);

    // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80: dd keeps the 2^-80 tail.
    let eps = (2.0_f64).powi(-40);
    let x = Dd::from_f64(1.0).add(Dd::from_f64(eps));
    let sq = x.mul(x);
    let expected_lo = (2.0_f64).powi(-80);
    let tail = sq.sub(Dd::from_f64(1.0)).sub(Dd::from_f64(2.0 * eps));
    assert!((tail.to_f64() - expected_lo).abs() < 1e-40);

    // Complex division against a hand-checked value: (3+4i)/(1-2i) = -1 + 2i.
    let z = DdC::new(3.0, 4.0).div(DdC::new(1.0, -2.0));
    assert!((z.re.to_f64() + 1.0).abs() < 1e-30);
    assert!((z.im.to_f64() - 2.0).abs() < 1e-30);
}
