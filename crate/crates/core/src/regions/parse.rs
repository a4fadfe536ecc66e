//! Region specification mini-language.
//!
//! Grammar:
//! ```text
//! region := "pi:" UINT
//!         | "disc"
//!         | "hull:" kspec
//!         | "union:(" region ("," region)* ")"
//! kspec  := UINT "-" UINT          (inclusive range, e.g. hull:1-6)
//!         | UINT ("," UINT)*       (list, e.g. hull:2,3,5)
//! ```
//! Malformed input is rejected with the byte position of the offending
//! character.

use std::collections::BTreeSet;
use std::fmt;

use super::Region;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for RegionParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "region parse error at byte {}: {}",
            self.position, self.message
        )
    }
}

impl std::error::Error for RegionParseError {}

impl Region {
    pub fn parse(input: &str) -> Result<Region, RegionParseError> {
        let mut cursor = Cursor {
            bytes: input.as_bytes(),
            pos: 0,
        };
        cursor.skip_ws();
        let region = cursor.region()?;
        cursor.skip_ws();
        if cursor.pos != cursor.bytes.len() {
            return Err(cursor.error("trailing input after region"));
        }
        Ok(region)
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn error(&self, message: impl Into<String>) -> RegionParseError {
        RegionParseError {
            position: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, expected: u8) -> Result<(), RegionParseError> {
        if self.peek() == Some(expected) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(format!("expected '{}'", expected as char)))
        }
    }

    fn keyword(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_alphabetic() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.bytes[start..self.pos]).into_owned()
    }

    fn uint(&mut self) -> Result<u32, RegionParseError> {
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an unsigned integer"));
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).unwrap();
        text.parse::<u32>().map_err(|_| RegionParseError {
            position: start,
            message: format!("integer '{text}' out of range"),
        })
    }

    fn region(&mut self) -> Result<Region, RegionParseError> {
        self.skip_ws();
        let kw_pos = self.pos;
        let kw = self.keyword();
        match kw.as_str() {
            "pi" => {
                self.eat(b':')?;
                let k = self.uint()?;
                if k == 0 {
                    return Err(RegionParseError {
                        position: kw_pos,
                        message: "polygon index must be at least 1".into(),
                    });
                }
                Ok(Region::Polygon(k))
            }
            "disc" => Ok(Region::Disc),
            "hull" => {
                self.eat(b':')?;
                let ks = self.kspec()?;
                Ok(Region::HullOfRoots(ks))
            }
            "union" => {
                self.eat(b':')?;
                self.eat(b'(')?;
                let mut members = vec![self.region()?];
                self.skip_ws();
                while self.peek() == Some(b',') {
                    self.pos += 1;
                    members.push(self.region()?);
                    self.skip_ws();
                }
                self.eat(b')')?;
                Ok(Region::Union(members))
            }
            "" => Err(self.error("expected a region keyword (pi, disc, hull, union)")),
            other => Err(RegionParseError {
                position: kw_pos,
                message: format!("unknown region keyword '{other}'"),
            }),
        }
    }

    fn kspec(&mut self) -> Result<BTreeSet<u32>, RegionParseError> {
        let first_pos = self.pos;
        let first = self.uint()?;
        if first == 0 {
            return Err(RegionParseError {
                position: first_pos,
                message: "root index must be at least 1".into(),
            });
        }
        let mut ks = BTreeSet::new();
        if self.peek() == Some(b'-') {
            self.pos += 1;
            let last_pos = self.pos;
            let last = self.uint()?;
            if last < first {
                return Err(RegionParseError {
                    position: last_pos,
                    message: format!("empty range {first}-{last}"),
                });
            }
            ks.extend(first..=last);
        } else {
            ks.insert(first);
            while self.peek() == Some(b',') {
                self.pos += 1;
                let next_pos = self.pos;
                let next = self.uint()?;
                if next == 0 {
                    return Err(RegionParseError {
                        position: next_pos,
                        message: "root index must be at least 1".into(),
                    });
                }
                ks.insert(next);
            }
        }
        Ok(ks)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    #[test]
    fn parses_all_forms() {
        assert_eq!(Region::parse("pi:3").unwrap(), Region::Polygon(3));
        assert_eq!(Region::parse("disc").unwrap(), Region::Disc);
        assert_eq!(
            Region::parse("hull:1-6").unwrap(),
            Region::HullOfRoots((1..=6).collect())
        );
        assert_eq!(
            Region::parse("hull:2,3,5").unwrap(),
            Region::HullOfRoots([2, 3, 5].into_iter().collect())
        );
        assert_eq!(
            Region::parse("union:(pi:2,pi:3)").unwrap(),
            Region::Union(vec![Region::Polygon(2), Region::Polygon(3)])
        );
        assert_eq!(
            Region::parse("union:(pi:2, union:(disc, hull:1-2))").unwrap(),
            Region::Union(vec![
                Region::Polygon(2),
                Region::Union(vec![
                    Region::Disc,
                    Region::HullOfRoots([1, 2].into_iter().collect())
                ])
            ])
        );
    }

    #[test]
    fn rejects_malformed_with_positions() {
        let err = Region::parse("pi:").unwrap_err();
        assert_eq!(err.position, 3);

        let err = Region::parse("pi:0").unwrap_err();
        assert!(err.message.contains("at least 1"));

        let err = Region::parse("blob:3").unwrap_err();
        assert_eq!(err.position, 0);
        assert!(err.message.contains("blob"));

        let err = Region::parse("union:(pi:2").unwrap_err();
        assert!(err.message.contains("expected ')'"));

        let err = Region::parse("hull:6-2").unwrap_err();
        assert!(err.message.contains("empty range"));

        let err = Region::parse("pi:2 extra").unwrap_err();
        assert!(err.message.contains("trailing"));
    }

    #[test]
    fn parsed_regions_answer_membership() {
        let region = Region::parse("union:(pi:2,pi:3)").unwrap();
        let answer = region.contains(Complex64::new(-0.6, 0.1)).unwrap();
        match answer {
            super::super::RegionAnswer::Decided(r) => assert!(!r.inside),
            _ => panic!("expected decided"),
        }
    }
}
