//! Ket expressions such as `(1+1i)*|0> + |1>`.
//!
//! ```text
//! expr := sign? term (("+"|"-") term)*
//! term := coef? "|" bits ">"
//! coef := number | "(" signed ("+"|"-") number "i" ")" , then optional "*"
//! bits := ("0"|"1")+            all terms equal length
//! ```
//! Whitespace is ignored. Repeated kets accumulate.

use num_complex::Complex64;

use super::{PureState, MAX_PURE_QUBITS, NORM_TOL};
use crate::error::{Error, Result};

/// Outcome of [`parse_ket`]. `renormalized` is set when the written
/// amplitudes did not already have unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedKet {
    pub state: PureState,
    pub input_norm: f64,
    pub renormalized: bool,
}

pub fn parse_ket(expression: &str) -> Result<ParsedKet> {
    let mut p = Parser {
        src: expression.as_bytes(),
        pos: 0,
    };
    let terms = p.expr()?;
    let n = terms[0].1.len();
    if n > MAX_PURE_QUBITS {
        return Err(Error::TooManyQubits {
            what: "pure state",
            n,
            max: MAX_PURE_QUBITS,
        });
    }
    let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n];
    for (coef, bits) in &terms {
        let idx = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        amps[idx] += coef;
    }
    let (state, input_norm) = PureState::normalized(n, amps)?;
    Ok(ParsedKet {
        state,
        input_norm,
        renormalized: (input_norm * input_norm - 1.0).abs() > NORM_TOL,
    })
}

/// Renders every nonzero amplitude as `(re±imi)*|bits>`. Parsing the result
/// gives back the same state.
pub fn render_ket(state: &PureState) -> String {
    let n = state.n_qubits();
    let mut out = String::new();
    for (i, a) in state.amplitudes().iter().enumerate() {
        if a.re == 0.0 && a.im == 0.0 {
            continue;
        }
        if !out.is_empty() {
            out.push_str(" + ");
        }
        let sign = if a.im.is_sign_negative() { '-' } else { '+' };
        out.push_str(&format!("({}{}{}i)*|{:0width$b}>", a.re, sign, a.im.abs(), i, width = n));
    }
    if out.is_empty() {
        // unreachable for a normalized state
        out.push_str(&format!("0*|{}>", "0".repeat(n)));
    }
    out
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => self.err(format!("expected '{}', found '{}'", c as char, x as char)),
            None => self.err(format!("expected '{}', found end of input", c as char)),
        }
    }

    fn expr(&mut self) -> Result<Vec<(Complex64, Vec<u8>)>> {
        let mut terms = Vec::new();
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1.0
            }
            Some(b'+') => {
                self.pos += 1;
                1.0
            }
            None => return self.err("empty expression"),
            _ => 1.0,
        };
        loop {
            self.skip_ws();
            let term_start = self.pos;
            let (coef, bits) = self.term()?;
            if let Some((_, first)) = terms.first() {
                let first: &Vec<u8> = first;
                if first.len() != bits.len() {
                    self.pos = term_start;
                    return self.err(format!(
                        "ket has {} qubits but earlier kets have {}",
                        bits.len(),
                        first.len()
                    ));
                }
            }
            terms.push((coef * sign, bits));
            sign = match self.peek() {
                None => break,
                Some(b'+') => 1.0,
                Some(b'-') => -1.0,
                Some(c) => return self.err(format!("expected '+' or '-', found '{}'", c as char)),
            };
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<(Complex64, Vec<u8>)> {
        let coef = match self.peek() {
            Some(b'|') => Complex64::new(1.0, 0.0),
            Some(b'(') => {
                self.pos += 1;
                self.complex()?
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => Complex64::new(self.number()?, 0.0),
            Some(c) => return self.err(format!("unexpected '{}'", c as char)),
            None => return self.err("expected a term, found end of input"),
        };
        if self.peek() == Some(b'*') {
            self.pos += 1;
        }
        self.expect(b'|')?;
        let mut bits = Vec::new();
        while let Some(&c) = self.src.get(self.pos) {
            match c {
                b'0' | b'1' => bits.push(c - b'0'),
                _ => break,
            }
            self.pos += 1;
        }
        if bits.is_empty() {
            return self.err("expected one or more '0'/'1' after '|'");
        }
        self.expect(b'>')?;
        Ok((coef, bits))
    }

    // after "(": signed ("+"|"-") number "i" ")"
    fn complex(&mut self) -> Result<Complex64> {
        let re = self.signed()?;
        let sign = match self.peek() {
            Some(b'+') => 1.0,
            Some(b'-') => -1.0,
            _ => return self.err("expected '+' or '-' before the imaginary part"),
        };
        self.pos += 1;
        self.skip_ws();
        let im = self.number()?;
        self.expect(b'i')?;
        self.expect(b')')?;
        Ok(Complex64::new(re, sign * im))
    }

    fn signed(&mut self) -> Result<f64> {
        match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.skip_ws();
                Ok(-self.number()?)
            }
            Some(b'+') => {
                self.pos += 1;
                self.skip_ws();
                self.number()
            }
            _ => self.number(),
        }
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let start = self.pos;
        let digits = |p: &mut Self| {
            let s = p.pos;
            while p.src.get(p.pos).is_some_and(u8::is_ascii_digit) {
                p.pos += 1;
            }
            p.pos - s
        };
        let mut count = digits(self);
        if self.src.get(self.pos) == Some(&b'.') {
            self.pos += 1;
            count += digits(self);
        }
        if count == 0 {
            self.pos = start;
            return self.err("expected a number");
        }
        if matches!(self.src.get(self.pos), Some(b'e' | b'E')) {
            let save = self.pos;
            self.pos += 1;
            if matches!(self.src.get(self.pos), Some(b'+' | b'-')) {
                self.pos += 1;
            }
            if digits(self) == 0 {
                self.pos = save;
            }
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii slice");
        match text.parse::<f64>() {
            Ok(v) if v.is_finite() => Ok(v),
            _ => {
                self.pos = start;
                self.err(format!("invalid number '{text}'"))
            }
        }
    }
}
