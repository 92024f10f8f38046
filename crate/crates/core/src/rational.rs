//! Exact rational scalars and the `p/q` string encoding used in every
//! serialized payload.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qvec(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| q(x)).collect()
}

/// Parses `3`, `-3/2`, `−3/2` (unicode minus) or a terminating decimal like `0.25`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let t = s.trim().replace('\u{2212}', "-");
    let bad = |msg: &str| Error::Parse {
        line: 1,
        column: 1,
        message: format!("{msg}: `{s}`"),
    };
    if t.is_empty() {
        return Err(bad("empty rational"));
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad("bad numerator"))?;
        let d: BigInt = d.trim().parse().map_err(|_| bad("bad denominator"))?;
        if d.is_zero() {
            return Err(bad("zero denominator"));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let int = int.trim_start_matches(['-', '+']);
        if !frac.chars().all(|c| c.is_ascii_digit()) {
            return Err(bad("bad decimal"));
        }
        let digits: BigInt = format!("{}{}", if int.is_empty() { "0" } else { int }, frac)
            .parse()
            .map_err(|_| bad("bad decimal"))?;
        let scale = num::pow(BigInt::from(10), frac.len());
        let v = Q::new(digits, scale);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = t.parse().map_err(|_| bad("bad integer"))?;
    Ok(Q::from_integer(n))
}

pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn to_f64(x: &Q) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Scales a rational vector to the unique primitive integer vector on the same ray.
/// The zero vector maps to itself.
pub fn primitive(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    primitive_int(&ints)
}

pub fn primitive_int(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub fn int_to_q(v: &[BigInt]) -> Vec<Q> {
    v.iter().map(|x| Q::from_integer(x.clone())).collect()
}

pub fn sign(x: &Q) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Serde adapters: rationals travel as strings, integers may also arrive as JSON numbers.
pub mod serde_q {
    use super::*;

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Str(String),
        Int(i64),
        Float(f64),
    }

    fn from_raw<E: serde::de::Error>(raw: Raw) -> Result<Q, E> {
        match raw {
            Raw::Str(s) => parse_rational(&s).map_err(E::custom),
            Raw::Int(i) => Ok(q(i)),
            Raw::Float(f) => Q::from_float(f).ok_or_else(|| E::custom("non-finite number")),
        }
    }

    pub fn serialize<S: Serializer>(x: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        from_raw(Raw::deserialize(d)?)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Q], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for x in v {
                seq.serialize_element(&fmt_rational(x))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Q>, D::Error> {
            Vec::<Raw>::deserialize(d)?
                .into_iter()
                .map(from_raw)
                .collect()
        }
    }

    pub mod mat {
        use super::*;

        #[derive(serde::Serialize)]
        struct Row<'a>(#[serde(with = "super::vec")] &'a [Q]);

        pub fn serialize<S: Serializer>(m: &[Vec<Q>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(m.iter().map(|r| Row(r)))
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<Q>>, D::Error> {
            Vec::<Vec<Raw>>::deserialize(d)?
                .into_iter()
                .map(|r| r.into_iter().map(from_raw).collect())
                .collect()
        }
    }

    /// Integer matrices, as decimal strings.
    pub mod int_mat {
        use super::*;

        pub fn serialize<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
            s.collect_seq(
                m.iter()
                    .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>()),
            )
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
            Vec::<Vec<Raw>>::deserialize(d)?
                .into_iter()
                .map(|r| {
                    r.into_iter()
                        .map(|x| {
                            let v = from_raw::<D::Error>(x)?;
                            if v.is_integer() {
                                Ok(v.to_integer())
                            } else {
                                Err(serde::de::Error::custom("expected an integer"))
                            }
                        })
                        .collect()
                })
                .collect()
        }
    }

    pub mod opt_mat {
        use super::*;

        pub fn serialize<S: Serializer>(m: &Option<Vec<Vec<Q>>>, s: S) -> Result<S::Ok, S::Error> {
            match m {
                Some(m) => super::mat::serialize(m, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Vec<Vec<Q>>>, D::Error> {
            Option::<Vec<Vec<Raw>>>::deserialize(d)?
                .map(|m| {
                    m.into_iter()
                        .map(|r| r.into_iter().map(from_raw).collect())
                        .collect()
                })
                .transpose()
        }
    }
}
