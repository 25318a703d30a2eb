use num_integer::Integer;

use super::SetExpr;
use crate::error::{Error, ParseError, Result};

const KEYWORDS: &[&str] = &[
    "all",
    "odds",
    "evens",
    "squares",
    "cubes",
    "modset",
    "poly",
    "geom",
    "combcube",
    "diagonal",
    "union",
    "intersect",
    "diff",
    "complement",
    "{",
];

/// Largest generator count accepted by `combcube`.
pub const MAX_CUBE_GENERATORS: usize = 24;

/// Parses a set expression. Whitespace between tokens is ignored.
pub fn parse(text: &str) -> Result<SetExpr> {
    let mut p = Parser { src: text, pos: 0 };
    let expr = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(&["end of input"]));
    }
    Ok(expr)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn found(&self) -> Option<String> {
        let rest = &self.src[self.pos..];
        let c = rest.chars().next()?;
        if c.is_ascii_alphanumeric() || c == '_' || c == '-' {
            let end = rest
                .char_indices()
                .skip(1)
                .find(|(_, ch)| !(ch.is_ascii_alphanumeric() || *ch == '_'))
                .map_or(rest.len(), |(i, _)| i);
            Some(rest[..end].to_string())
        } else {
            Some(c.to_string())
        }
    }

    fn error(&self, expected: &[&str]) -> Error {
        ParseError {
            offset: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.found(),
        }
        .into()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let tok = c.to_string();
            Err(self.error(&[tok.as_str()]))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let first = rest.chars().next()?;
        if !(first.is_ascii_alphabetic() || first == '_') {
            return None;
        }
        let end = rest
            .char_indices()
            .find(|(_, ch)| !(ch.is_ascii_alphanumeric() || *ch == '_'))
            .map_or(rest.len(), |(i, _)| i);
        self.pos += end;
        Some(&rest[..end])
    }

    fn signed(&mut self) -> Result<(usize, i64)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let mut end = 0;
        if rest.starts_with('-') || rest.starts_with('+') {
            end = 1;
        }
        let digits = rest[end..].bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(&["integer"]));
        }
        end += digits;
        let value = rest[..end]
            .parse::<i64>()
            .map_err(|_| Error::InvalidParameter {
                offset: start,
                message: format!("integer `{}` out of range", &rest[..end]),
            })?;
        self.pos += end;
        Ok((start, value))
    }

    fn unsigned(&mut self) -> Result<(usize, u64)> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[self.pos..];
        let digits = rest.bytes().take_while(u8::is_ascii_digit).count();
        if digits == 0 {
            return Err(self.error(&["nonnegative integer"]));
        }
        let value = rest[..digits]
            .parse::<u64>()
            .map_err(|_| Error::InvalidParameter {
                offset: start,
                message: format!("integer `{}` out of range", &rest[..digits]),
            })?;
        self.pos += digits;
        Ok((start, value))
    }

    fn positive(&mut self, what: &str) -> Result<u64> {
        let (offset, v) = self.unsigned()?;
        if v == 0 {
            return Err(Error::InvalidParameter {
                offset,
                message: format!("{what} must be positive"),
            });
        }
        Ok(v)
    }

    fn expr(&mut self) -> Result<SetExpr> {
        if self.peek() == Some('{') {
            return self.explicit();
        }
        let start = self.pos;
        let Some(name) = self.ident() else {
            return Err(self.error(KEYWORDS));
        };
        let expr = match name {
            "all" => SetExpr::All,
            "odds" => SetExpr::Odds,
            "evens" => SetExpr::Evens,
            "squares" => SetExpr::Squares,
            "cubes" => SetExpr::Cubes,
            "modset" => {
                self.expect('(')?;
                let n = self.positive("modset modulus")?;
                self.expect(')')?;
                SetExpr::ModSet(n)
            }
            "poly" => self.poly()?,
            "geom" => self.geom()?,
            "combcube" => {
                self.expect('(')?;
                let open = self.pos;
                let mut gens = vec![self.positive("cube generator")?];
                while self.eat(',') {
                    gens.push(self.positive("cube generator")?);
                }
                self.expect(')')?;
                if gens.len() > MAX_CUBE_GENERATORS {
                    return Err(Error::InvalidParameter {
                        offset: open,
                        message: format!("at most {MAX_CUBE_GENERATORS} cube generators"),
                    });
                }
                SetExpr::CombCube(gens)
            }
            "diagonal" => {
                self.expect('(')?;
                let (offset, h) = self.unsigned()?;
                self.expect(')')?;
                let h = u32::try_from(h).map_err(|_| Error::InvalidParameter {
                    offset,
                    message: "diagonal height out of range".into(),
                })?;
                SetExpr::Diagonal(h)
            }
            "union" | "intersect" | "diff" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(')')?;
                match name {
                    "union" => SetExpr::union(a, b),
                    "intersect" => SetExpr::intersect(a, b),
                    _ => SetExpr::diff(a, b),
                }
            }
            "complement" => {
                self.expect('(')?;
                let a = self.expr()?;
                self.expect(')')?;
                SetExpr::complement(a)
            }
            _ => {
                self.pos = start;
                return Err(self.error(KEYWORDS));
            }
        };
        Ok(expr)
    }

    fn explicit(&mut self) -> Result<SetExpr> {
        self.expect('{')?;
        let mut xs: Vec<u64> = Vec::new();
        if self.eat('}') {
            return Ok(SetExpr::Explicit(xs));
        }
        loop {
            self.skip_ws();
            let offset = self.pos;
            let v = self.positive("set element")?;
            if xs.last().is_some_and(|&last| last >= v) {
                return Err(Error::InvalidParameter {
                    offset,
                    message: "explicit set must be strictly increasing".into(),
                });
            }
            xs.push(v);
            if self.eat('}') {
                break;
            }
            if !self.eat(',') {
                return Err(self.error(&[",", "}"]));
            }
        }
        Ok(SetExpr::Explicit(xs))
    }

    fn poly(&mut self) -> Result<SetExpr> {
        self.expect('(')?;
        let open = self.pos;
        let save = self.pos;
        let named =
            matches!(self.ident(), Some(id) if id.starts_with('c')) && self.peek() == Some('=');
        self.pos = save;

        let coeffs = if named {
            let mut slots: Vec<Option<i64>> = Vec::new();
            loop {
                self.skip_ws();
                let key_at = self.pos;
                let key = self
                    .ident()
                    .ok_or_else(|| self.error(&["coefficient name"]))?;
                let index = key
                    .strip_prefix('c')
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(|| Error::InvalidParameter {
                        offset: key_at,
                        message: format!("unknown coefficient name `{key}`"),
                    })?;
                self.expect('=')?;
                let (_, value) = self.signed()?;
                if index == 0 {
                    if value != 0 {
                        return Err(Error::ConstantTerm {
                            offset: key_at,
                            value,
                        });
                    }
                } else {
                    if slots.len() < index {
                        slots.resize(index, None);
                    }
                    if slots[index - 1].replace(value).is_some() {
                        return Err(Error::InvalidParameter {
                            offset: key_at,
                            message: format!("coefficient `{key}` given twice"),
                        });
                    }
                }
                if !self.eat(',') {
                    break;
                }
            }
            slots
                .into_iter()
                .map(|c| c.unwrap_or(0))
                .collect::<Vec<_>>()
        } else {
            let mut cs = vec![self.signed()?.1];
            while self.eat(',') {
                cs.push(self.signed()?.1);
            }
            cs
        };
        self.expect(')')?;
        if coeffs.iter().all(|&c| c == 0) {
            return Err(Error::InvalidParameter {
                offset: open,
                message: "polynomial must be nonconstant".into(),
            });
        }
        Ok(SetExpr::Poly(coeffs))
    }

    fn geom(&mut self) -> Result<SetExpr> {
        self.expect('(')?;
        let a = self.positive("geom start")?;
        self.expect(',')?;
        let ratio_at = self.pos;
        let num = self.positive("geom ratio numerator")?;
        let den = if self.eat('/') {
            self.positive("geom ratio denominator")?
        } else {
            1
        };
        self.expect(')')?;
        if num <= den {
            return Err(Error::InvalidParameter {
                offset: ratio_at,
                message: "geom ratio must exceed 1".into(),
            });
        }
        let g = num.gcd(&den);
        Ok(SetExpr::Geom {
            a,
            num: num / g,
            den: den / g,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keywords() {
        assert_eq!(parse("odds").unwrap(), SetExpr::Odds);
        assert_eq!(parse("  squares ").unwrap(), SetExpr::Squares);
    }

    #[test]
    fn nested_union() {
        let e = parse("union(modset(3), poly(0,1))").unwrap();
        assert_eq!(
            e,
            SetExpr::union(SetExpr::ModSet(3), SetExpr::Poly(vec![0, 1]))
        );
    }

    #[test]
    fn constant_term_rejected() {
        let err = parse("poly(c0=1, c1=2)").unwrap_err();
        assert!(matches!(err, Error::ConstantTerm { value: 1, .. }), "{err}");
        // zero constant term is fine
        assert_eq!(
            parse("poly(c0=0, c2=1)").unwrap(),
            SetExpr::Poly(vec![0, 1])
        );
    }

    #[test]
    fn parse_error_reports_offset_and_expected() {
        let err = parse("union(odds evens)").unwrap_err();
        let Error::Parse(pe) = err else {
            panic!("{err}")
        };
        assert_eq!(pe.offset, 11);
        assert_eq!(pe.expected, vec![",".to_string()]);
        assert_eq!(pe.found.as_deref(), Some("evens"));

        let Error::Parse(pe) = parse("primes").unwrap_err() else {
            panic!()
        };
        assert_eq!(pe.offset, 0);
        assert!(pe.expected.iter().any(|t| t == "modset"));

        let Error::Parse(pe) = parse("odds )").unwrap_err() else {
            panic!()
        };
        assert_eq!(pe.offset, 5);
    }

    #[test]
    fn parameter_checks() {
        assert!(matches!(
            parse("modset(0)"),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            parse("geom(1, 1)"),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            parse("geom(1, 2/3)"),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(
            parse("{3,2}"),
            Err(Error::InvalidParameter { .. })
        ));
        assert!(matches!(parse("{0}"), Err(Error::InvalidParameter { .. })));
        assert!(matches!(
            parse("poly(0,0)"),
            Err(Error::InvalidParameter { .. })
        ));
    }

    #[test]
    fn geom_ratio_reduced() {
        assert_eq!(
            parse("geom(3, 6/4)").unwrap(),
            SetExpr::Geom {
                a: 3,
                num: 3,
                den: 2
            }
        );
        assert_eq!(parse("geom(1,2)").unwrap().render(), "geom(1, 2)");
    }

    #[test]
    fn render_examples() {
        assert_eq!(SetExpr::Odds.render(), "odds");
        assert_eq!(
            SetExpr::union(SetExpr::ModSet(3), SetExpr::Squares).render(),
            "union(modset(3), squares)"
        );
        assert_eq!(SetExpr::Explicit(vec![1, 4, 9]).render(), "{1,4,9}");
        assert_eq!(parse("{ }").unwrap(), SetExpr::Explicit(vec![]));
    }
}
