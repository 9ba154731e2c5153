//! Byte cursor shared by the function and operator-chain parsers.

use num_complex::Complex64;

use crate::error::Error;

pub(crate) struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
        }
    }

    pub(crate) fn pos(&self) -> usize {
        self.pos
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn peek_raw(&self, ahead: usize) -> Option<u8> {
        self.src.get(self.pos + ahead).copied()
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    pub(crate) fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn eat_word(&mut self, word: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(word.as_bytes()) {
            self.pos += word.len();
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, b: u8, expected: &str) -> Result<(), Error> {
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error(expected))
        }
    }

    pub(crate) fn error(&mut self, expected: &str) -> Error {
        self.skip_ws();
        Error::Parse {
            offset: self.pos,
            expected: expected.to_string(),
        }
    }

    pub(crate) fn starts_number(&mut self) -> bool {
        match self.peek() {
            Some(b'0'..=b'9') | Some(b'(') => true,
            Some(b'.') => matches!(self.peek_raw(1), Some(b'0'..=b'9')),
            _ => false,
        }
    }

    /// `[sign] (digits [. digits] | . digits) [(e|E) [sign] digits]`.
    /// A `.` is only part of the number when a digit follows it, so that
    /// `J^1.J^1` splits at the dot.
    pub(crate) fn float(&mut self) -> Result<f64, Error> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.peek_raw(0), Some(b'+') | Some(b'-')) {
            self.pos += 1;
        }
        let int_digits = self.digits();
        let mut frac_digits = 0;
        if self.peek_raw(0) == Some(b'.') && matches!(self.peek_raw(1), Some(b'0'..=b'9')) {
            self.pos += 1;
            frac_digits = self.digits();
        }
        if int_digits == 0 && frac_digits == 0 {
            self.pos = start;
            return Err(Error::Parse {
                offset: start,
                expected: "number".into(),
            });
        }
        if matches!(self.peek_raw(0), Some(b'e') | Some(b'E')) {
            let mark = self.pos;
            self.pos += 1;
            if matches!(self.peek_raw(0), Some(b'+') | Some(b'-')) {
                self.pos += 1;
            }
            if self.digits() == 0 {
                // not an exponent after all ("2e" is malformed)
                self.pos = mark;
                return Err(Error::Parse {
                    offset: mark + 1,
                    expected: "exponent digits".into(),
                });
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        text.parse::<f64>().map_err(|_| Error::Parse {
            offset: start,
            expected: "number".into(),
        })
    }

    fn digits(&mut self) -> usize {
        let start = self.pos;
        while matches!(self.peek_raw(0), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        self.pos - start
    }

    /// `"(" float [ ("+"|"-") float "i" ] ")" | float`; `(float i)` is also
    /// accepted as a purely imaginary value.
    pub(crate) fn complex(&mut self) -> Result<Complex64, Error> {
        if !self.eat(b'(') {
            return Ok(Complex64::new(self.float()?, 0.0));
        }
        let first = self.float()?;
        if self.eat(b'i') {
            self.expect(b')', "')'")?;
            return Ok(Complex64::new(0.0, first));
        }
        let sign = if self.eat(b'+') {
            Some(1.0)
        } else if self.eat(b'-') {
            Some(-1.0)
        } else {
            None
        };
        let value = match sign {
            Some(sign) => {
                let im = self.float()?;
                self.expect(b'i', "'i'")?;
                Complex64::new(first, sign * im)
            }
            None => Complex64::new(first, 0.0),
        };
        self.expect(b')', "')'")?;
        Ok(value)
    }
}

/// Shortest decimal that parses back to the same double; exponent notation
/// outside `1e-5 <= |v| < 1e16`.
pub fn format_f64(v: f64) -> String {
    let a = v.abs();
    if a == 0.0 || (1e-5..1e16).contains(&a) || !a.is_finite() {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// Canonical complex literal `(re+imi)` / `(re-imi)` accepted by the parsers.
pub fn format_complex(z: Complex64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}i)", format_f64(z.re), sign, format_f64(z.im.abs()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats() {
        for (text, want) in [
            ("1", 1.0),
            ("-2.5", -2.5),
            (".5", 0.5),
            ("1e-3", 1e-3),
            ("3E+2", 300.0),
        ] {
            assert_eq!(Cursor::new(text).float().unwrap(), want, "{text}");
        }
        let mut c = Cursor::new("1.J");
        assert_eq!(c.float().unwrap(), 1.0);
        assert_eq!(c.pos(), 1);
        assert!(Cursor::new("e5").float().is_err());
        assert!(Cursor::new("2e").float().is_err());
    }

    #[test]
    fn complexes() {
        let cases = [
            ("(1+1i)", Complex64::new(1.0, 1.0)),
            ("( 0.5 - 2e-1 i )", Complex64::new(0.5, -0.2)),
            ("(2)", Complex64::new(2.0, 0.0)),
            ("(3i)", Complex64::new(0.0, 3.0)),
            ("-4", Complex64::new(-4.0, 0.0)),
        ];
        for (text, want) in cases {
            assert_eq!(Cursor::new(text).complex().unwrap(), want, "{text}");
        }
        assert!(matches!(
            Cursor::new("(1+2)").complex(),
            Err(Error::Parse { offset: 4, .. })
        ));
    }

    #[test]
    fn formatting_round_trips() {
        for v in [0.1, -0.0, 1e-300, 123456.789, 2.0, 1e20, 5e-324] {
            let s = format_f64(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        let z = Complex64::new(-0.0, -0.0);
        let back = Cursor::new(&format_complex(z)).complex().unwrap();
        assert_eq!(back.re.to_bits(), z.re.to_bits());
        assert_eq!(back.im.to_bits(), z.im.to_bits());
    }
}
