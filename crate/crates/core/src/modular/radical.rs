//! Real radical expressions such as `1/2 + (3/8)*sqrt(2)` or `root4(12)^3`,
//! evaluated in double-double precision.
//!
//! Grammar: `+ - * /`, `^` with an integer exponent, parentheses, decimal
//! literals, `sqrt(..)` and `root4(..)`. Whitespace is ignored.

use super::dd::Dd;
use super::ModularError;

const MAX_DEPTH: usize = 64;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

fn err(msg: impl Into<String>) -> ModularError {
    ModularError::Parse(msg.into())
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), ModularError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(err(format!("expected '{}' at offset {}", c as char, self.pos)))
        }
    }

    fn enter(&mut self) -> Result<(), ModularError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(err("expression nested too deeply"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Dd, ModularError> {
        self.enter()?;
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= self.term()?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<Dd, ModularError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc *= self.unary()?;
            } else if self.eat(b'/') {
                let d = self.unary()?;
                if d.hi == 0.0 {
                    return Err(err("division by zero"));
                }
                acc = acc / d;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Dd, ModularError> {
        self.enter()?;
        let v = if self.eat(b'-') {
            -self.unary()?
        } else if self.eat(b'+') {
            self.unary()?
        } else {
            self.power()?
        };
        self.depth -= 1;
        Ok(v)
    }

    fn power(&mut self) -> Result<Dd, ModularError> {
        let base = self.primary()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        let k: i32 = digits
            .parse()
            .ok()
            .filter(|k: &i32| *k <= 1024)
            .ok_or_else(|| err(format!("bad exponent at offset {start}")))?;
        if neg && base.hi == 0.0 {
            return Err(err("division by zero"));
        }
        Ok(base.powi(if neg { -k } else { k }))
    }

    fn primary(&mut self) -> Result<Dd, ModularError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(b')')?;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_digit() || self.src[self.pos] == b'.')
                {
                    self.pos += 1;
                }
                let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                Dd::parse_decimal(text).ok_or_else(|| err(format!("bad number '{text}'")))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                self.expect(b'(')?;
                let arg = self.expr()?;
                self.expect(b')')?;
                if arg.hi < 0.0 {
                    return Err(err(format!("{name} of a negative number")));
                }
                match name {
                    "sqrt" => Ok(arg.sqrt()),
                    "root4" => Ok(arg.sqrt().sqrt()),
                    _ => Err(err(format!("unknown function '{name}'"))),
                }
            }
            Some(c) => Err(err(format!("unexpected '{}' at offset {}", c as char, self.pos))),
            None => Err(err("unexpected end of expression")),
        }
    }
}

/// Evaluates a radical expression.
pub fn eval_radical(src: &str) -> Result<Dd, ModularError> {
    let mut p = Parser { src: src.as_bytes(), pos: 0, depth: 0 };
    let v = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at offset {}", p.pos)));
    }
    if !v.is_finite() {
        return Err(err("value is not finite"));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(s: &str) -> f64 {
        eval_radical(s).unwrap().to_f64()
    }

    #[test]
    fn arithmetic() {
        assert_eq!(ev("1 + 2*3"), 7.0);
        assert_eq!(ev("(1+2)*3"), 9.0);
        assert_eq!(ev("2^10"), 1024.0);
        assert_eq!(ev("-2^2"), -4.0);
        assert_eq!(ev("2^-1"), 0.5);
        assert_eq!(ev("1/2 - 3/4"), -0.25);
        assert_eq!(ev("8/2/2"), 2.0);
        assert_eq!(ev("0.25 + .5"), 0.75);
    }

    #[test]
    fn radicals() {
        assert!((ev("sqrt(2)^2") - 2.0).abs() < 1e-15);
        assert!((ev("root4(12)^4") - 12.0).abs() < 1e-14);
        let x = eval_radical("sqrt(2)*sqrt(2) - 2").unwrap();
        assert!(x.abs().hi < 1e-30);
    }

    #[test]
    fn errors() {
        for bad in ["", "1 +", "(1", "sqrt(-1)", "foo(2)", "1/0", "2^x", "1 2", "0^-1", "1.2.3"] {
            assert!(eval_radical(bad).is_err(), "{bad}");
        }
        let deep = "(".repeat(200) + "1" + &")".repeat(200);
        assert!(eval_radical(&deep).is_err());
    }
}
