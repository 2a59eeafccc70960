//! JSON input: quadric systems given by Gram matrices, and integral lattices.

use std::fmt;

use serde::de::{self, Deserializer, Visitor};
use serde::Deserialize;

use crate::algebra::{parse_rational, Matrix, OddPrime, Rational, Q};
use crate::mukai::{IntegralLattice, LatticeFile};
use crate::quadform::QuadraticForm;
use crate::systems::{NetOfQuadrics, PencilOfQuadrics};
use crate::Error;

/// A matrix entry: an integer or a `"num/den"` string.
struct Entry(Rational);

impl<'de> Deserialize<'de> for Entry {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct EntryVisitor;

        impl Visitor<'_> for EntryVisitor {
            type Value = Entry;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an integer or a \"num/den\" string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Entry, E> {
                Ok(Entry(Rational::from_integer(v.into())))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Entry, E> {
                Ok(Entry(Rational::from_integer(v.into())))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Entry, E> {
                parse_rational(v).map(Entry).map_err(E::custom)
            }
        }

        d.deserialize_any(EntryVisitor)
    }
}

/// `"Q"`, or an odd prime for data given by integers mod p.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FieldSpec {
    #[default]
    Rationals,
    Prime(OddPrime),
}

impl<'de> Deserialize<'de> for FieldSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct FieldVisitor;

        impl Visitor<'_> for FieldVisitor {
            type Value = FieldSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("\"Q\" or an odd prime")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<FieldSpec, E> {
                OddPrime::new(v).map(FieldSpec::Prime).map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<FieldSpec, E> {
                Err(E::custom(format!("{v} is not an odd prime")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<FieldSpec, E> {
                match v {
                    "Q" => Ok(FieldSpec::Rationals),
                    _ => Err(E::custom(format!("unknown field {v:?}"))),
                }
            }
        }

        d.deserialize_any(FieldVisitor)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSystem {
    pencil: Option<Vec<Vec<Vec<Entry>>>>,
    net: Option<Vec<Vec<Vec<Entry>>>>,
    #[serde(default)]
    field: FieldSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SystemInput {
    Pencil(PencilOfQuadrics<Rational>),
    Net(NetOfQuadrics<Rational>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemFile {
    pub system: SystemInput,
    pub field: FieldSpec,
}

fn form(rows: Vec<Vec<Entry>>) -> Result<QuadraticForm<Rational>, Error> {
    let rows = rows
        .into_iter()
        .map(|r| r.into_iter().map(|e| e.0).collect())
        .collect();
    Ok(QuadraticForm::new(Matrix::from_rows(rows, Q)?)?)
}

fn forms<const N: usize>(
    grams: Vec<Vec<Vec<Entry>>>,
    what: &str,
) -> Result<[QuadraticForm<Rational>; N], Error> {
    if grams.len() != N {
        return Err(Error::Input(format!(
            "a {what} needs {N} Gram matrices, got {}",
            grams.len()
        )));
    }
    let v = grams.into_iter().map(form).collect::<Result<Vec<_>, _>>()?;
    Ok(v.try_into().unwrap_or_else(|_| unreachable!()))
}

/// Parses `{"pencil": [G1, G2], "field": "Q"}` or `{"net": [G1, G2, G3]}`.
pub fn parse_system(text: &str) -> Result<SystemFile, Error> {
    let raw: RawSystem = serde_json::from_str(text)?;
    let system = match (raw.pencil, raw.net) {
        (Some(g), None) => {
            let [q1, q2] = forms::<2>(g, "pencil")?;
            SystemInput::Pencil(PencilOfQuadrics::new(q1, q2)?)
        }
        (None, Some(g)) => {
            let [q1, q2, q3] = forms::<3>(g, "net")?;
            SystemInput::Net(NetOfQuadrics::new(q1, q2, q3)?)
        }
        _ => {
            return Err(Error::Input(
                "exactly one of \"pencil\" and \"net\" is required".into(),
            ))
        }
    };
    Ok(SystemFile {
        system,
        field: raw.field,
    })
}

/// Parses `{"label": ..., "gram": [[...], ...]}`.
pub fn parse_lattice(text: &str) -> Result<IntegralLattice, Error> {
    let f: LatticeFile = serde_json::from_str(text)?;
    Ok(IntegralLattice::from_file(&f)?)
}

pub fn lattice_to_json(lattice: &IntegralLattice) -> Result<String, Error> {
    Ok(serde_json::to_string(&lattice.to_file()?).expect("serializable"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;
    use crate::systems::QuadricSystem;
    use crate::ErrorKind;

    fn diag(a: &[&str]) -> String {
        let n = a.len();
        let rows: Vec<String> = (0..n)
            .map(|i| {
                let r: Vec<String> = (0..n)
                    .map(|j| if i == j { a[i].to_string() } else { "0".into() })
                    .collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        format!("[{}]", rows.join(","))
    }

    #[test]
    fn pencil_with_fractions() {
        let text = format!(
            r#"{{"pencil": [{}, {}], "field": "Q"}}"#,
            diag(&["1", "1", "1", "1"]),
            diag(&["0", "\"1/2\"", "2", "-3"])
        );
        let f = parse_system(&text).unwrap();
        assert_eq!(f.field, FieldSpec::Rationals);
        match f.system {
            SystemInput::Pencil(p) => {
                assert_eq!(p.forms()[1].gram()[(1, 1)], crate::algebra::rat(1, 2))
            }
            SystemInput::Net(_) => panic!("expected a pencil"),
        }
    }

    #[test]
    fn net_with_prime_field() {
        let text = format!(
            r#"{{"net": [{}, {}, {}], "field": 7}}"#,
            diag(&["1"; 6]),
            diag(&["0", "1", "2", "3", "4", "5"]),
            diag(&["0", "1", "4", "9", "16", "25"])
        );
        let f = parse_system(&text).unwrap();
        assert_eq!(f.field, FieldSpec::Prime(OddPrime::new(7).unwrap()));
        match f.system {
            SystemInput::Net(n) => assert_eq!(n.forms()[2].gram()[(2, 2)], int(4)),
            SystemInput::Pencil(_) => panic!("expected a net"),
        }
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_system("{\n  \"pencil\": [[[1, 0], [0, \"1/0\"]]]\n}").unwrap_err();
        assert_eq!(e.kind(), ErrorKind::Parse);
        match e {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            e => panic!("{e}"),
        }
        assert_eq!(
            parse_system("{\"pencil\": [").unwrap_err().kind(),
            ErrorKind::Parse
        );
        assert_eq!(
            parse_system(r#"{"pencil": [], "field": 4}"#)
                .unwrap_err()
                .kind(),
            ErrorKind::Parse
        );
    }

    #[test]
    fn semantic_errors_are_preconditions() {
        let id = diag(&["1"; 4]);
        let asym = format!(r#"{{"pencil": [[[1,2],[0,1]], {id}]}}"#);
        assert_eq!(
            parse_system(&asym).unwrap_err().kind(),
            ErrorKind::Precondition
        );
        let one = format!(r#"{{"pencil": [{id}]}}"#);
        assert_eq!(
            parse_system(&one).unwrap_err().kind(),
            ErrorKind::Precondition
        );
        let dep = format!(r#"{{"pencil": [{id}, {}]}}"#, diag(&["2"; 4]));
        assert_eq!(
            parse_system(&dep).unwrap_err().kind(),
            ErrorKind::Precondition
        );
        let small = r#"{"pencil": [[[1,0],[0,1]], [[0,1],[1,0]]]}"#;
        assert_eq!(
            parse_system(small).unwrap_err().kind(),
            ErrorKind::Precondition
        );
        assert_eq!(
            parse_system("{}").unwrap_err().kind(),
            ErrorKind::Precondition
        );
    }

    #[test]
    fn lattice_round_trip() {
        let k3 = crate::mukai::k3_lattice();
        let text = lattice_to_json(&k3).unwrap();
        assert_eq!(parse_lattice(&text).unwrap(), k3);
        assert_eq!(
            parse_lattice("{\"gram\": [[1]").unwrap_err().kind(),
            ErrorKind::Parse
        );
    }
}
