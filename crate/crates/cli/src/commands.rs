use std::fs;

use k3lab::algebra::OddPrime;
use k3lab::construction::{invariance_trials, verify_relation, RelationReport};
use k3lab::enumerative::{
    brill_noether_number, expected_dim, fano_degree, fano_genus_allowed, homogeneous_space,
    linear_section_invariants, pairs_moduli_dims, LocusType, HEURISTIC_NOTE,
};
use k3lab::io::{parse_lattice, parse_system, FieldSpec, SystemFile, SystemInput};
use k3lab::mukai::{overlattice, IntegralLattice, MukaiVector, OverlatticeSpec};
use k3lab::systems::{
    sextic_smoothness_probe, NetOfQuadrics, PencilOfQuadrics, QuadricSystem, DEFAULT_PROBE_PRIMES,
};
use k3lab::Error;
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::args::*;

const DIAGONAL_PENCIL: &str = include_str!("../data/diagonal_pencil.json");
const DIAGONAL_NET: &str = include_str!("../data/diagonal_net.json");
const K3_LATTICE: &str = include_str!("../data/k3_lattice.json");

const DEFAULT_COUNT_PRIMES: [u32; 4] = [5, 7, 11, 13];

/// A report and whether the computation it describes verified.
pub struct Report {
    pub value: Value,
    pub verified: bool,
}

impl From<Value> for Report {
    fn from(value: Value) -> Self {
        Report {
            value,
            verified: true,
        }
    }
}

/// Inline JSON if it starts with a brace, otherwise a file path.
fn load(source: Option<&str>, default: &str) -> Result<String, Error> {
    match source {
        None => Ok(default.to_string()),
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(path) => fs::read_to_string(path).map_err(|e| Error::Input(format!("{path}: {e}"))),
    }
}

fn system(args: &SystemArgs, default: &str) -> Result<SystemFile, Error> {
    parse_system(&load(args.system.as_deref(), default)?)
}

fn pencil(args: &SystemArgs) -> Result<(PencilOfQuadrics<k3lab::Rational>, FieldSpec), Error> {
    let f = system(args, DIAGONAL_PENCIL)?;
    match f.system {
        SystemInput::Pencil(p) => Ok((p, f.field)),
        SystemInput::Net(_) => Err(Error::Input("expected a pencil, got a net".into())),
    }
}

fn net(args: &SystemArgs) -> Result<(NetOfQuadrics<k3lab::Rational>, FieldSpec), Error> {
    let f = system(args, DIAGONAL_NET)?;
    match f.system {
        SystemInput::Net(n) => Ok((n, f.field)),
        SystemInput::Pencil(_) => Err(Error::Input("expected a net, got a pencil".into())),
    }
}

fn prime(p: u64) -> Result<OddPrime, Error> {
    Ok(OddPrime::new(p)?)
}

fn primes(list: &PrimeList, default: &[u32]) -> Result<Vec<OddPrime>, Error> {
    if list.primes.is_empty() {
        return default.iter().map(|&p| prime(p.into())).collect();
    }
    list.primes.iter().map(|&p| prime(p)).collect()
}

/// `--p`, or the prime the system file is written over.
fn working_prime(p: Option<u64>, field: FieldSpec) -> Result<OddPrime, Error> {
    match (p, field) {
        (Some(p), _) => prime(p),
        (None, FieldSpec::Prime(p)) => Ok(p),
        (None, FieldSpec::Rationals) => {
            Err(Error::Input("--p is required for systems over Q".into()))
        }
    }
}

fn relation_report(r: RelationReport) -> Report {
    let failed: Vec<usize> = r.failed.iter().map(|f| f.sample).collect();
    let verified = r.is_consistent();
    Report {
        value: json!({
            "p": r.p,
            "samples": r.samples,
            "c": r.c,
            "passed": r.passed,
            "failed": failed,
            "witnesses": r.failed,
        }),
        verified,
    }
}

fn lattice_value(l: &IntegralLattice) -> Result<Value, Error> {
    let inv = l.invariants();
    let file = l.to_file()?;
    Ok(json!({
        "label": file.label,
        "rank": inv.rank,
        "det": inv.det.to_string(),
        "even": inv.even,
        "signature": inv.signature,
        "gram": file.gram,
    }))
}

fn parse_vector(text: &str) -> Result<Vec<BigInt>, Error> {
    text.split(',')
        .map(|x| {
            x.trim().parse::<BigInt>().map_err(|_| Error::Parse {
                line: 1,
                column: 1,
                message: format!("invalid integer {:?} in --alpha", x.trim()),
            })
        })
        .collect()
}

pub fn dispatch(command: &Command) -> Result<Report, Error> {
    match command {
        Command::Mukai(MukaiCommand::Dim { r, l2, s }) => {
            let v = MukaiVector::new(*r, *l2, *s)?;
            Ok(json!({ "dim": v.moduli_dim() }).into())
        }
        Command::Lattice(LatticeCommand::Invariants { input }) => {
            let l = parse_lattice(&load(input.lattice.as_deref(), K3_LATTICE)?)?;
            Ok(lattice_value(&l)?.into())
        }
        Command::Lattice(LatticeCommand::Overlattice { input, alpha, r }) => {
            let l = parse_lattice(&load(input.lattice.as_deref(), K3_LATTICE)?)?;
            let spec = OverlatticeSpec::new(l, parse_vector(alpha)?, *r)?;
            let over = overlattice(&spec)?;
            let mut value = lattice_value(&over)?;
            value["alpha_squared"] = json!(spec.alpha_squared().to_string());
            Ok(value.into())
        }
        Command::Pencil(PencilCommand::Disc { system }) => {
            let (p, _) = pencil(system)?;
            Ok(json!({ "discriminant": p.discriminant()?.to_poly().to_string() }).into())
        }
        Command::Pencil(PencilCommand::Jinv { system }) => {
            let (p, _) = pencil(system)?;
            Ok(json!({ "j": p.j_invariant()?.to_string() }).into())
        }
        Command::Pencil(PencilCommand::Cover { system }) => {
            let (p, _) = pencil(system)?;
            let cover = p.double_cover()?;
            Ok(json!({
                "equation": cover.equation(),
                "base_dim": cover.base_dim,
                "branch_degree": cover.branch_degree(),
                "smoothness": cover.verdict,
            })
            .into())
        }
        Command::Pencil(PencilCommand::Count {
            system,
            primes: list,
        }) => {
            let (p, _) = pencil(system)?;
            let rows = primes(list, &DEFAULT_COUNT_PRIMES)?
                .into_iter()
                .map(|q| p.twist_check(q))
                .collect::<Result<Vec<_>, _>>()?;
            let verified = rows.iter().all(|r| r.matches);
            Ok(Report {
                value: json!({ "counts": rows }),
                verified,
            })
        }
        Command::Net(NetCommand::Disc { system }) => {
            let (n, _) = net(system)?;
            Ok(json!({ "discriminant": n.discriminant_poly().to_string() }).into())
        }
        Command::Net(NetCommand::Cover {
            system,
            primes: list,
        }) => {
            let (n, _) = net(system)?;
            let cover = n.double_cover(&primes(list, &DEFAULT_PROBE_PRIMES)?)?;
            Ok(json!({
                "equation": cover.equation(),
                "base_dim": cover.base_dim,
                "branch_degree": cover.branch_degree(),
                "smoothness": cover.verdict,
            })
            .into())
        }
        Command::Net(NetCommand::Probe {
            system,
            primes: list,
        }) => {
            let (n, _) = net(system)?;
            let verdict = sextic_smoothness_probe(
                &n.discriminant_poly(),
                &primes(list, &DEFAULT_PROBE_PRIMES)?,
            )?;
            Ok(json!({ "smoothness": verdict }).into())
        }
        Command::Construct(ConstructCommand::VerifyPencil { args }) => {
            let (pencil, field) = pencil(&args.system)?;
            let fp = pencil.reduce(working_prime(args.p, field)?)?;
            Ok(relation_report(verify_relation(
                &fp,
                args.samples as usize,
                args.seed,
            )?))
        }
        Command::Construct(ConstructCommand::VerifyNet { args }) => {
            let (net, field) = net(&args.system)?;
            let fp = net.reduce(working_prime(args.p, field)?)?;
            Ok(relation_report(verify_relation(
                &fp,
                args.samples as usize,
                args.seed,
            )?))
        }
        Command::Construct(ConstructCommand::Invariance { args }) => {
            let f = system(&args.system, DIAGONAL_PENCIL)?;
            let p = working_prime(args.p, f.field)?;
            let (kind, summary) = match f.system {
                SystemInput::Pencil(s) => (
                    "pencil",
                    invariance_trials(&s.reduce(p)?, args.samples as usize, args.seed)?,
                ),
                SystemInput::Net(s) => (
                    "net",
                    invariance_trials(&s.reduce(p)?, args.samples as usize, args.seed)?,
                ),
            };
            let verified = summary.failed.is_empty();
            Ok(Report {
                value: json!({
                    "system": kind,
                    "p": p.get(),
                    "trials": summary.trials,
                    "passed": summary.passed,
                    "failed": summary.failed,
                }),
                verified,
            })
        }
        Command::Bn(BnCommand::Dim { kind, g, n }) => {
            let kind = match kind {
                LocusKind::III => LocusType::III,
                LocusKind::II => LocusType::II,
            };
            let dim = expected_dim(kind, *g, *n)?;
            Ok(json!({ "dim": dim, "note": HEURISTIC_NOTE }).into())
        }
        Command::Bn(BnCommand::Rho { g, r, d }) => {
            Ok(json!({ "rho": brill_noether_number(*g, *r, *d)? }).into())
        }
        Command::Fano(FanoCommand::Section { variety, cuts }) => {
            let x = homogeneous_space(variety)?;
            let s = linear_section_invariants(&x, *cuts)?;
            let mut value = serde_json::to_value(&s).expect("serializable");
            value["variety"] = json!(x.name);
            Ok(value.into())
        }
        Command::Fano(FanoCommand::Genus { g: Some(g) }) => Ok(json!({
            "g": g,
            "allowed": fano_genus_allowed(*g)?,
            "degree": fano_degree(*g)?,
        })
        .into()),
        Command::Fano(FanoCommand::Genus { g: None }) => {
            let genera: Vec<i64> = (2..=20)
                .filter(|&g| fano_genus_allowed(g).unwrap_or(false))
                .collect();
            Ok(json!({ "genera": genera }).into())
        }
        Command::Pairs(PairsCommand::Dims { g }) => {
            let (pairs, curves) = pairs_moduli_dims(*g)?;
            Ok(json!({ "g": g, "pairs": pairs, "curves": curves }).into())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_systems_parse() {
        let (p, field) = pencil(&SystemArgs { system: None }).unwrap();
        assert_eq!(field, FieldSpec::Rationals);
        assert_eq!(p.nvars(), 4);
        let (n, _) = net(&SystemArgs { system: None }).unwrap();
        assert_eq!(n.nvars(), 6);
        assert_eq!(
            parse_lattice(K3_LATTICE).unwrap(),
            k3lab::mukai::k3_lattice()
        );
    }

    #[test]
    fn inline_json_is_recognized() {
        let inline = format!("  {}", DIAGONAL_PENCIL);
        assert_eq!(load(Some(&inline), "").unwrap(), inline);
        assert!(load(Some("/nonexistent/file.json"), "").is_err());
    }

    #[test]
    fn alpha_parsing() {
        assert_eq!(
            parse_vector("1, -2,3").unwrap(),
            vec![1.into(), (-2).into(), 3.into()]
        );
        assert!(parse_vector("1,x").is_err());
    }
}
