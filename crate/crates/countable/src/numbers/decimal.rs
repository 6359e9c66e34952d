use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, MutexGuard};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecimalParseError {
    #[error("empty decimal text")]
    Empty,
    #[error("expected a digit at byte {0}")]
    ExpectedDigit(usize),
    #[error("unexpected character at byte {0}")]
    UnexpectedCharacter(usize),
}

/// Finite prefix of a decimal expansion in its JSON wire form. `int` is the
/// signed integer part as a decimal string ("-0" keeps the sign of values in
/// (-1, 0)); `digits` holds the first fractional digits as a digit string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecimalPrefix {
    pub int: String,
    pub digits: String,
}

impl fmt::Display for DecimalPrefix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.digits.is_empty() {
            write!(f, "{}", self.int)
        } else {
            write!(f, "{}.{}", self.int, self.digits)
        }
    }
}

/// A decimal expansion: sign, integer magnitude, and a lazy stream of
/// fractional digits. Digits are produced on demand and memoized behind a
/// mutex, so any finite prefix is computed once no matter how often it is
/// read; clones share the cache.
///
/// Sign and magnitude are stored separately because values in (-1, 0) need
/// a negative sign on a zero integer part.
///
/// Streams built by [`DecimalStream::from_rational`] and
/// [`DecimalStream::sqrt`] are canonical: expansions that terminate end in
/// a 0-tail, never a 9-tail. Streams from [`DecimalStream::from_digit_iter`]
/// are taken as given; nothing can check an arbitrary lazy stream for an
/// all-9 tail.
#[derive(Clone)]
pub struct DecimalStream {
    negative: bool,
    int_mag: BigUint,
    cache: Arc<Mutex<DigitCache>>,
}

struct DigitCache {
    known: Vec<u8>,
    next: Box<dyn FnMut() -> u8 + Send>,
}

impl DecimalStream {
    fn with_source(negative: bool, int_mag: BigUint, next: Box<dyn FnMut() -> u8 + Send>) -> Self {
        DecimalStream {
            negative,
            int_mag,
            cache: Arc::new(Mutex::new(DigitCache {
                known: Vec::new(),
                next,
            })),
        }
    }

    /// Long-division expansion of a canonical rational. Terminating
    /// expansions continue with a 0-tail.
    pub fn from_rational(r: &Rational) -> Self {
        let negative = r.is_negative();
        let den = r.denominator().clone();
        let (int_mag, mut rem) = r.numerator().magnitude().div_rem(&den);
        let next = Box::new(move || {
            rem *= 10u32;
            let (digit, next_rem) = rem.div_rem(&den);
            rem = next_rem;
            digit.to_u8().expect("long division digit is 0..=9")
        });
        DecimalStream::with_source(negative, int_mag, next)
    }

    /// Square root of a natural number by the classical digit-by-digit
    /// method: all arithmetic is on integer remainders, so every emitted
    /// digit is exact. Perfect squares continue with a 0-tail.
    pub fn sqrt(n: &BigUint) -> Self {
        let mut decimal: Vec<u32> = n.to_string().bytes().map(|b| u32::from(b - b'0')).collect();
        if decimal.len() % 2 == 1 {
            decimal.insert(0, 0);
        }
        let mut root = BigUint::zero();
        let mut rem = BigUint::zero();
        for pair in decimal.chunks(2) {
            rem = rem * 100u32 + (pair[0] * 10 + pair[1]);
            next_sqrt_digit(&mut root, &mut rem);
        }
        let int_mag = root.clone();
        let next = Box::new(move || {
            rem *= 100u32;
            next_sqrt_digit(&mut root, &mut rem)
        });
        DecimalStream::with_source(false, int_mag, next)
    }

    /// Expansion with the given fractional digits followed by a 0-tail.
    /// Panics if any digit exceeds 9. A negative zero integer part is not
    /// expressible through `BigInt`; parse "-0.5" instead.
    pub fn from_digits(int_part: BigInt, digits: Vec<u8>) -> Self {
        assert!(digits.iter().all(|d| *d <= 9), "digits must be 0..=9");
        let (sign, mag) = int_part.into_parts();
        let mut source = digits.into_iter().chain(std::iter::repeat(0));
        DecimalStream::with_source(
            sign == Sign::Minus,
            mag,
            Box::new(move || source.next().expect("repeat(0) never ends")),
        )
    }

    /// Expansion fed by an arbitrary digit iterator; a finite iterator is
    /// extended with a 0-tail. The stream is taken as given: reading a
    /// digit greater than 9 panics, and no canonical-form guarantee applies.
    pub fn from_digit_iter<I>(int_part: BigInt, digits: I) -> Self
    where
        I: Iterator<Item = u8> + Send + 'static,
    {
        let (sign, mag) = int_part.into_parts();
        let mut source = digits.fuse();
        DecimalStream::with_source(
            sign == Sign::Minus,
            mag,
            Box::new(move || source.next().unwrap_or(0)),
        )
    }

    fn ensure(&self, upto: usize) -> MutexGuard<'_, DigitCache> {
        let mut cache = self.cache.lock().expect("digit source never panics");
        while cache.known.len() < upto {
            let d = (cache.next)();
            assert!(d <= 9, "digit source produced {d}, digits must be 0..=9");
            cache.known.push(d);
        }
        cache
    }

    /// Fractional digit at 1-based position `pos`.
    pub fn digit(&self, pos: u64) -> u8 {
        assert!(pos >= 1, "fractional digit positions start at 1");
        let pos = usize::try_from(pos).expect("digit position fits in memory");
        self.ensure(pos).known[pos - 1]
    }

    /// First `count` fractional digits.
    pub fn prefix(&self, count: u64) -> Vec<u8> {
        let count = usize::try_from(count).expect("prefix length fits in memory");
        self.ensure(count).known[..count].to_vec()
    }

    /// True when the written sign is negative. Distinct from
    /// `integer_part()` being negative: -0.5 has integer part 0.
    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// Magnitude of the integer part.
    pub fn integer_magnitude(&self) -> &BigUint {
        &self.int_mag
    }

    /// Signed integer part. The sign of values in (-1, 0) collapses here;
    /// use [`DecimalStream::is_negative`] for the written sign.
    pub fn integer_part(&self) -> BigInt {
        let mag = BigInt::from(self.int_mag.clone());
        if self.negative {
            -mag
        } else {
            mag
        }
    }

    fn int_string(&self) -> String {
        if self.negative {
            format!("-{}", self.int_mag)
        } else {
            self.int_mag.to_string()
        }
    }

    /// Textual form of the first `count` fractional digits, e.g. "1.41421".
    /// With `count` 0 the result has no decimal point.
    pub fn prefix_string(&self, count: u64) -> String {
        let mut out = self.int_string();
        if count > 0 {
            out.push('.');
            for d in self.prefix(count) {
                out.push(char::from(b'0' + d));
            }
        }
        out
    }

    /// The first `count` digits in JSON wire form.
    pub fn to_prefix(&self, count: u64) -> DecimalPrefix {
        DecimalPrefix {
            int: self.int_string(),
            digits: self
                .prefix(count)
                .into_iter()
                .map(|d| char::from(b'0' + d))
                .collect(),
        }
    }

    /// True iff the written signs, integer parts, and first `count`
    /// fractional digits all agree. This compares representations, not
    /// values: 0.4999... and 0.5000... are unequal at every positive count.
    pub fn prefix_eq(&self, other: &DecimalStream, count: u64) -> bool {
        self.negative == other.negative
            && self.int_mag == other.int_mag
            && (1..=count).all(|pos| self.digit(pos) == other.digit(pos))
    }

    /// The first `count` decimal truncations as canonical rationals: the
    /// k-th entry keeps k-1 fractional digits, so it differs from the
    /// represented value by less than 10^(1-k).
    pub fn approximations(&self, count: u64) -> Vec<Rational> {
        let mut out = Vec::new();
        if count == 0 {
            return out;
        }
        let mut scaled = self.int_mag.clone();
        let mut den = BigInt::from(1u32);
        for k in 1..=count {
            if k > 1 {
                scaled = scaled * 10u32 + self.digit(k - 1);
                den *= 10;
            }
            let num = BigInt::from(scaled.clone());
            let num = if self.negative { -num } else { num };
            out.push(Rational::new(num, den.clone()).expect("powers of ten are nonzero"));
        }
        out
    }
}

fn next_sqrt_digit(root: &mut BigUint, rem: &mut BigUint) -> u8 {
    let base = &*root * 20u32;
    let mut digit = 0u32;
    let mut taken = BigUint::zero();
    for cand in 1..=9u32 {
        let trial = (&base + cand) * cand;
        if trial <= *rem {
            digit = cand;
            taken = trial;
        } else {
            break;
        }
    }
    *rem -= taken;
    *root = &*root * 10u32 + digit;
    digit as u8
}

impl fmt::Debug for DecimalStream {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cached = self.cache.lock().map(|c| c.known.len()).unwrap_or(0);
        write!(
            f,
            "DecimalStream({}.., {cached} digits cached)",
            self.int_string()
        )
    }
}

impl FromStr for DecimalStream {
    type Err = DecimalParseError;

    /// Accepts an optional sign, integer digits, an optional '.' with at
    /// least one fractional digit, and an optional trailing "…" or "..."
    /// which is ignored. Error positions are byte offsets into the trimmed
    /// text.
    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let s = text.trim();
        let s = s
            .strip_suffix('…')
            .or_else(|| s.strip_suffix("..."))
            .unwrap_or(s);
        if s.is_empty() {
            return Err(DecimalParseError::Empty);
        }
        let bytes = s.as_bytes();
        let mut i = 0;
        let negative = match bytes[0] {
            b'-' => {
                i += 1;
                true
            }
            b'+' => {
                i += 1;
                false
            }
            _ => false,
        };
        let int_start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if i == int_start {
            return Err(DecimalParseError::ExpectedDigit(i));
        }
        let int_mag: BigUint = s[int_start..i].parse().expect("checked digits");
        let mut digits = Vec::new();
        if i < bytes.len() {
            if bytes[i] != b'.' {
                return Err(DecimalParseError::UnexpectedCharacter(i));
            }
            i += 1;
            let frac_start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                digits.push(bytes[i] - b'0');
                i += 1;
            }
            if i == frac_start {
                return Err(DecimalParseError::ExpectedDigit(i));
            }
            if i < bytes.len() {
                return Err(DecimalParseError::UnexpectedCharacter(i));
            }
        }
        let mut source = digits.into_iter().chain(std::iter::repeat(0));
        Ok(DecimalStream::with_source(
            negative,
            int_mag,
            Box::new(move || source.next().expect("repeat(0) never ends")),
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use proptest::prelude::*;
    use std::sync::atomic::{AtomicUsize, Ordering};

    fn rat(s: &str) -> Rational {
        s.parse().unwrap()
    }

    #[test]
    fn long_division_matches_worked_expansions() {
        assert_eq!(
            DecimalStream::from_rational(&rat("1/3")).prefix_string(5),
            "0.33333"
        );
        assert_eq!(
            DecimalStream::from_rational(&rat("5/1")).prefix_string(5),
            "5.00000"
        );
        assert_eq!(
            DecimalStream::from_rational(&rat("-6/5")).prefix_string(5),
            "-1.20000"
        );
    }

    #[test]
    fn long_division_is_periodic_for_sevenths() {
        let s = DecimalStream::from_rational(&rat("1/7"));
        assert_eq!(s.prefix(12), vec![1, 4, 2, 8, 5, 7, 1, 4, 2, 8, 5, 7]);
    }

    #[test]
    fn sqrt_matches_known_prefixes() {
        assert_eq!(
            DecimalStream::sqrt(&BigUint::from(2u32)).prefix_string(5),
            "1.41421"
        );
        assert_eq!(
            DecimalStream::sqrt(&BigUint::from(3u32)).prefix_string(4),
            "1.7320"
        );
        assert_eq!(
            DecimalStream::sqrt(&BigUint::from(4u32)).prefix_string(5),
            "2.00000"
        );
        assert_eq!(
            DecimalStream::sqrt(&BigUint::from(0u32)).prefix_string(5),
            "0.00000"
        );
        assert_eq!(
            DecimalStream::sqrt(&BigUint::from(144u32)).prefix_string(5),
            "12.00000"
        );
    }

    #[test]
    fn sqrt_prefix_squares_below_argument() {
        // The k-digit truncation t of sqrt(n) satisfies
        // t^2 <= n * 10^(2k) < (t+1)^2.
        for n in [2u32, 3, 5, 99, 10000] {
            let s = DecimalStream::sqrt(&BigUint::from(n));
            for k in 1..=10u64 {
                let mut t = s.integer_magnitude().clone();
                for d in s.prefix(k) {
                    t = t * 10u32 + d;
                }
                let scale = BigUint::from(10u32).pow(2 * k as u32);
                let target = BigUint::from(n) * scale;
                assert!(&t * &t <= target, "t^2 > n*10^2k for n={n} k={k}");
                let t1 = &t + 1u32;
                assert!(&t1 * &t1 > target, "(t+1)^2 <= n*10^2k for n={n} k={k}");
            }
        }
    }

    #[test]
    fn approximations_truncate_digit_by_digit() {
        let seq = DecimalStream::sqrt(&BigUint::from(2u32)).approximations(5);
        let want: Vec<Rational> = ["1/1", "7/5", "141/100", "707/500", "7071/5000"]
            .iter()
            .map(|s| rat(s))
            .collect();
        assert_eq!(seq, want);

        let seq = DecimalStream::from_rational(&rat("1/2")).approximations(3);
        assert_eq!(seq, vec![Rational::zero(), rat("1/2"), rat("1/2")]);
    }

    #[test]
    fn negative_approximations_carry_the_sign() {
        let seq = DecimalStream::from_rational(&rat("-6/5")).approximations(3);
        assert_eq!(seq, vec![rat("-1/1"), rat("-12/10"), rat("-6/5")]);
    }

    #[test]
    fn parse_accepts_documented_forms() {
        let s: DecimalStream = "0.1010…".parse().unwrap();
        assert_eq!(s.prefix(6), vec![1, 0, 1, 0, 0, 0]);
        let s: DecimalStream = "-1.20000...".parse().unwrap();
        assert_eq!(s.prefix_string(5), "-1.20000");
        let s: DecimalStream = "+2.5".parse().unwrap();
        assert_eq!(s.prefix_string(2), "2.50");
        let s: DecimalStream = "7".parse().unwrap();
        assert_eq!(s.prefix_string(3), "7.000");
        let s: DecimalStream = " 0.5 ".parse().unwrap();
        assert_eq!(s.digit(1), 5);
    }

    #[test]
    fn parse_keeps_the_sign_of_small_negatives() {
        let s: DecimalStream = "-0.5".parse().unwrap();
        assert!(s.is_negative());
        assert_eq!(s.integer_part(), BigInt::zero());
        assert_eq!(s.prefix_string(2), "-0.50");
    }

    #[test]
    fn parse_rejects_malformed_text() {
        use DecimalParseError::*;
        assert_eq!("".parse::<DecimalStream>().unwrap_err(), Empty);
        assert_eq!("…".parse::<DecimalStream>().unwrap_err(), Empty);
        assert_eq!("-".parse::<DecimalStream>().unwrap_err(), ExpectedDigit(1));
        assert_eq!(".5".parse::<DecimalStream>().unwrap_err(), ExpectedDigit(0));
        assert_eq!("1.".parse::<DecimalStream>().unwrap_err(), ExpectedDigit(2));
        assert_eq!(
            "1.2.3".parse::<DecimalStream>().unwrap_err(),
            UnexpectedCharacter(3)
        );
        assert_eq!(
            "1x".parse::<DecimalStream>().unwrap_err(),
            UnexpectedCharacter(1)
        );
        assert_eq!(
            "0.3…9".parse::<DecimalStream>().unwrap_err(),
            UnexpectedCharacter(3)
        );
    }

    #[test]
    fn prefix_eq_compares_sign_integer_and_digits() {
        let a: DecimalStream = "0.33333".parse().unwrap();
        let b: DecimalStream = "0.33334".parse().unwrap();
        assert!(a.prefix_eq(&b, 4));
        assert!(!a.prefix_eq(&b, 5));
        let neg: DecimalStream = "-0.5".parse().unwrap();
        let pos: DecimalStream = "0.5".parse().unwrap();
        assert!(!neg.prefix_eq(&pos, 0));
        let one: DecimalStream = "1.5".parse().unwrap();
        assert!(!pos.prefix_eq(&one, 0));
        assert!(a.prefix_eq(&a, 10));
    }

    #[test]
    fn digits_are_memoized_and_shared_between_clones() {
        let pulls = Arc::new(AtomicUsize::new(0));
        let counter = Arc::clone(&pulls);
        let source = (0u8..).map(move |i| {
            counter.fetch_add(1, Ordering::SeqCst);
            i % 10
        });
        let s = DecimalStream::from_digit_iter(BigInt::zero(), source);
        let clone = s.clone();
        assert_eq!(s.digit(5), 4);
        assert_eq!(clone.digit(5), 4);
        assert_eq!(clone.prefix(3), vec![0, 1, 2]);
        assert_eq!(pulls.load(Ordering::SeqCst), 5);
    }

    #[test]
    fn exhausted_digit_iterators_continue_with_zeros() {
        let s = DecimalStream::from_digit_iter(BigInt::from(1), vec![9, 9].into_iter());
        assert_eq!(s.prefix_string(4), "1.9900");
    }

    #[test]
    #[should_panic(expected = "digits must be 0..=9")]
    fn oversized_digits_from_iterators_panic_on_read() {
        let s = DecimalStream::from_digit_iter(BigInt::zero(), vec![12].into_iter());
        s.digit(1);
    }

    #[test]
    #[should_panic(expected = "digits must be 0..=9")]
    fn from_digits_validates_eagerly() {
        let _ = DecimalStream::from_digits(BigInt::zero(), vec![10]);
    }

    #[test]
    #[should_panic(expected = "positions start at 1")]
    fn digit_position_zero_is_rejected() {
        DecimalStream::from_rational(&rat("1/3")).digit(0);
    }

    #[test]
    fn json_prefix_round_trips() {
        let s: DecimalStream = "-0.4581".parse().unwrap();
        let prefix = s.to_prefix(4);
        assert_eq!(prefix.int, "-0");
        assert_eq!(prefix.digits, "4581");
        let json = serde_json::to_string(&prefix).unwrap();
        assert_eq!(json, r#"{"int":"-0","digits":"4581"}"#);
        assert_eq!(
            serde_json::from_str::<DecimalPrefix>(&json).unwrap(),
            prefix
        );
        assert_eq!(prefix.to_string(), "-0.4581");
    }

    proptest! {
        #[test]
        fn truncations_approximate_the_rational(n in -9999i64..9999, d in 1i64..9999) {
            let r = Rational::new(BigInt::from(n), BigInt::from(d)).unwrap();
            let s = DecimalStream::from_rational(&r);
            // k fractional digits: |r - trunc| < 10^-k.
            for k in [1u64, 3, 7] {
                let trunc = s.approximations(k + 1).pop().unwrap();
                let err = (r.clone() - trunc).abs();
                let bound = Rational::new(BigInt::one(), BigInt::from(10u32).pow(k as u32)).unwrap();
                prop_assert!(err < bound);
            }
        }

        #[test]
        fn rational_streams_never_have_long_nine_tails(n in 1i64..9999, d in 1i64..9999) {
            let r = Rational::new(BigInt::from(n), BigInt::from(d)).unwrap();
            let digits = DecimalStream::from_rational(&r).prefix(200);
            let longest_nine_run = digits
                .split(|d| *d != 9)
                .map(|run| run.len())
                .max()
                .unwrap_or(0);
            prop_assert!(longest_nine_run < 50, "50 consecutive 9s in {r}");
        }

        #[test]
        fn terminating_expansions_end_in_exact_zero_tails(n in 1u32..1000, a in 0u32..5, b in 0u32..5) {
            // Denominator 2^a * 5^b terminates within a+b digits.
            let den = 2i64.pow(a) * 5i64.pow(b);
            let r = Rational::new(BigInt::from(n), BigInt::from(den)).unwrap();
            let s = DecimalStream::from_rational(&r);
            let tail_start = u64::from(a + b) + 1;
            for pos in tail_start..tail_start + 40 {
                prop_assert_eq!(s.digit(pos), 0);
            }
        }
    }
}
