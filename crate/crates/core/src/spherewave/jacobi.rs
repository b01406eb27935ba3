use num_traits::Zero;

use crate::numcore::rational::{int, Rational};
use crate::numcore::Field;

/// `P_n^{(a,b)}(x)` by the three-term recurrence in `n`. Negative degrees
/// give 0.
///
/// Works in any [`Field`]; `a` and `b` are exact and `a + b` must not be a
/// negative integer that makes a recurrence denominator vanish.
pub fn jacobi<T: Field>(n: i64, a: &Rational, b: &Rational, x: &T) -> T {
    if n < 0 {
        return x.zero_like();
    }
    let p0 = x.one_like();
    if n == 0 {
        return p0;
    }
    let ab = a + b;
    // P_1 = (a + 1) + (a + b + 2)(x - 1)/2
    let half_slope = (&ab + int(2)) / int(2);
    let mut prev = p0;
    let mut cur = x.lift(&(a + int(1) - &half_slope)) + x.lift(&half_slope) * x.clone();
    let a2_b2 = a * a - b * b;
    for m in 2..=n {
        let mm = int(m);
        let c = &mm * int(2) + &ab;
        let a1 = &mm * int(2) * (&mm + &ab) * (&c - int(2));
        debug_assert!(!a1.is_zero());
        let lin = (&c - int(1)) * &a2_b2 / &a1;
        let slope = (&c - int(1)) * &c * (&c - int(2)) / &a1;
        let back = int(2) * (&mm + a - int(1)) * (&mm + b - int(1)) * &c / &a1;
        let next = (x.lift(&lin) + x.lift(&slope) * x.clone()) * cur.clone() - x.lift(&back) * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx P_n^{(a,b)}(x) = (n + a + b + 1)/2 P_{n-1}^{(a+1,b+1)}(x)`.
pub fn jacobi_derivative<T: Field>(n: i64, a: &Rational, b: &Rational, x: &T) -> T {
    if n <= 0 {
        return x.zero_like();
    }
    let scale = (int(n + 1) + a + b) / int(2);
    x.lift(&scale) * jacobi(n - 1, &(a + int(1)), &(b + int(1)), x)
}
