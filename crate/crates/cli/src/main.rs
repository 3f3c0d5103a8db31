//! `vr3`: certificates and worked examples for rank-3 quadrics of rational
//! normal curves and Veronese varieties.
//!
//! Exit status: 0 when everything checked, 1 when a claim failed to check,
//! 2 for usage or resource errors.

mod args;

use std::fs;
use std::process::ExitCode;
use std::time::Duration;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format, IdealArgs, Which};
use veronese_rank3::groebner::{self, GBasis, Ideal, Limits};
use veronese_rank3::json::to_json_pretty;
use veronese_rank3::poly::parse_poly;
use veronese_rank3::qmap::{self, VeroneseSpace};
use veronese_rank3::{replay, structure, Error, MultiPoly, Result, Roster};

/// A rendered result: the JSON artifact, its table form and whether every
/// check passed.
struct Outcome {
    json: Value,
    table: String,
    ok: bool,
}

impl Outcome {
    fn new(json: Value, table: String, ok: bool) -> Self {
        Outcome { json, table, ok }
    }
}

fn value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("artifacts serialize")
}

fn xy() -> Roster {
    Roster::new(["x", "y"]).expect("valid roster")
}

fn poly_arg(src: &Option<String>, name: &str, roster: &Roster) -> Result<MultiPoly> {
    let s = src.as_deref().ok_or_else(|| Error::Unsupported(format!("missing --{name}")))?;
    parse_poly(s, roster)
}

fn limits(timeout: Option<u64>) -> Limits {
    match timeout {
        Some(s) => Limits::with_timeout(Duration::from_secs(s)),
        None => Limits::default(),
    }
}

fn load_ideal(a: &IdealArgs) -> Result<(Ideal, veronese_rank3::MonomialOrder)> {
    let (ideal, file_order) = match (&a.ideal, &a.vars) {
        (Some(path), _) => {
            let src = fs::read_to_string(path).map_err(|e| Error::Unsupported(format!("{}: {e}", path.display())))?;
            let (i, o) = Ideal::from_json(&src)?;
            (i, Some(o))
        }
        (None, Some(vars)) => {
            let vars: Vec<&str> = vars.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let gens: Vec<&str> =
                a.gens.as_deref().unwrap_or("").split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
            (Ideal::parse(&vars, &gens)?, None)
        }
        (None, None) => return Err(Error::Unsupported("give --ideal FILE or --vars/--gens".into())),
    };
    let order = match &a.order {
        Some(o) => args::parse_order(o)?,
        None => file_order.unwrap_or_default(),
    };
    Ok((ideal, order))
}

fn lines<I: IntoIterator<Item = String>>(it: I) -> String {
    let mut s: String = it.into_iter().collect::<Vec<_>>().join("\n");
    s.push('\n');
    s
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    let lim = limits(cli.timeout);
    Ok(match &cli.command {
        Command::Generators { d } => {
            let space = VeroneseSpace::new(1, *d)?;
            let gens = qmap::rnc_generators(*d)?;
            let rows: Vec<(u32, u32, String)> =
                gens.generators.iter().map(|g| (g.i, g.j, g.form.to_poly(&space).to_string())).collect();
            let json = json!({
                "d": d,
                "generators": rows.iter().map(|(i, j, p)| json!({"i": i, "j": j, "poly": p})).collect::<Vec<_>>(),
            });
            Outcome::new(json, lines(rows.iter().map(|(i, j, p)| format!("Q{i},{j} = {p}"))), true)
        }
        Command::AlphaTable { d, ell } => {
            let t = qmap::alpha_table_symbolic(*d, *ell)?;
            let b = t.basis();
            let table = lines(t.alpha.entries().map(|((i, j), v)| format!("α{i},{j} = {}", v.display(b))));
            let mut json: Value = serde_json::from_str(&t.alpha.to_json()).expect("valid JSON");
            json["display"] =
                t.alpha.entries().map(|((i, j), v)| json!({"i": i, "j": j, "poly": v.display(b)})).collect();
            Outcome::new(json, table, true)
        }
        Command::Recurrences { d, ell } => {
            let r = qmap::beta_alpha_recurrences(&qmap::alpha_table_symbolic(*d, *ell)?);
            let table =
                format!("d = {}, ℓ = {}: {} identities checked, all zero: {}\n", r.d, r.ell, r.checked, r.all_zero);
            Outcome::new(value(&r), table, r.all_zero)
        }
        Command::Witness { d, ell } => {
            let (q, alpha) = qmap::witness_quadric(*d, *ell)?;
            let space = VeroneseSpace::new(1, *d)?;
            let alpha0: Vec<String> = (1..*d).map(|k| alpha.alpha(0, i64::from(k)).to_string()).collect();
            let poly = q.to_poly(&space).to_string();
            let table = format!("quadric: {poly}\nα0,1..α0,{}: {}\n", d - 1, alpha0.join(", "));
            Outcome::new(json!({"d": d, "ell": ell, "quadric": poly, "rank": q.rank(), "alpha0": alpha0}), table, true)
        }
        Command::Minimality { d } => {
            let c = structure::minimality_certificate(*d)?;
            let mut t: Vec<String> = c
                .witnesses
                .iter()
                .map(|w| {
                    format!("ℓ = {}: {}  pattern {}", w.ell, w.quadric, if w.pattern_holds { "ok" } else { "FAILED" })
                })
                .collect();
            t.extend(c.exclusions.iter().map(|x| format!("W{} ⊄ W{}: {}", x.ell2, x.ell1, x.excluded)));
            t.push(format!("verified: {}", c.verified));
            Outcome::new(value(&c), lines(t), c.verified)
        }
        Command::Nondegeneracy { d, ell } => {
            let c = structure::nondegeneracy_certificate(*d, *ell)?;
            let table = format!(
                "d = {}, ℓ = {}: rank {} of {} (|Σ| = {}), verified: {}\n",
                c.d,
                c.ell,
                c.rank,
                c.expected_rank,
                c.basis.len(),
                c.verified
            );
            Outcome::new(value(&c), table, c.verified)
        }
        Command::Fiber { d, ell, f, g, h } => {
            let r = xy();
            let v = structure::fiber_analysis(
                *d,
                *ell,
                &poly_arg(f, "f", &r)?,
                &poly_arg(g, "g", &r)?,
                &poly_arg(h, "h", &r)?,
            )?;
            let (table, ok) =
                match &v {
                    structure::FiberVerdict::InjectiveAtPoint { reason, .. } => {
                        (format!("injective at point: {reason}\n"), true)
                    }
                    structure::FiberVerdict::NonInjective(c) => {
                        (
                            format!(
                        "non-injective: C = {}, D = {}\nsecond point: <{}, {}>, <{}>\nimage: {}\nverified: {}\n",
                        c.c, c.dd, c.second.pencil.f, c.second.pencil.g, c.second.h, c.quadric, c.verified()
                    ),
                            c.verified(),
                        )
                    }
                    structure::FiberVerdict::NonInjectiveOverExtension { gcd_fg, square_part_h, .. } => (
                        format!("non-injective over an extension: gcd = {gcd_fg}, square part = {square_part_h}\n"),
                        true,
                    ),
                };
            Outcome::new(value(&v), table, ok)
        }
        Command::Theta { n, d, ell } => {
            let t = structure::theta(*n, *d, *ell);
            let table = if t.applicable {
                let mut l: Vec<String> = t.values.iter().map(|v| format!("m = {}: {}", v.m, v.value)).collect();
                let at: Vec<String> = t.argmax.iter().map(ToString::to_string).collect();
                l.push(format!("max {} at m = {}", t.max.expect("applicable"), at.join(", ")));
                lines(l)
            } else {
                "not applicable: needs 2 ≤ ℓ ≤ ⌊d/2⌋ − 1\n".into()
            };
            Outcome::new(value(&t), table, true)
        }
        Command::SingFamily { n, d, ell, m, count, seed } => {
            let certs = structure::singular_family_sample(*n, *d, *ell, *m, *count, *seed)?;
            let ok = certs.iter().all(|c| c.verified());
            let table = lines(certs.iter().map(|c| {
                format!(
                    "<{}, {}>, <{}>  <->  <{}, {}>, <{}>",
                    c.first.pencil.f, c.first.pencil.g, c.first.h, c.second.pencil.f, c.second.pencil.g, c.second.h
                )
            }));
            Outcome::new(
                json!({"n": n, "d": d, "ell": ell, "m": m, "seed": seed, "certificates": value(&certs)}),
                table,
                ok,
            )
        }
        Command::W1Check { d } => {
            let r = structure::w1_veronese_check(*d)?;
            let table = format!(
                "d = {}: {} quadrics, rank {} of {}, verified: {}\n",
                r.d, r.count, r.rank, r.expected, r.verified
            );
            Outcome::new(value(&r), table, r.verified)
        }
        Command::Gb { ideal } => {
            let (i, ord) = load_ideal(ideal)?;
            let gb = groebner::buchberger_with(&i, ord, &lim)?;
            Outcome::new(serde_json::from_str(&gb.to_json()).expect("valid JSON"), basis_table(&gb), true)
        }
        Command::Eliminate { ideal, drop } => {
            let (i, _) = load_ideal(ideal)?;
            let drop: Vec<&str> = drop.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
            let e = groebner::eliminate_with(&i, &drop, &lim)?;
            let table = lines(e.generators().iter().map(ToString::to_string));
            Outcome::new(serde_json::from_str(&e.to_json(None)).expect("valid JSON"), table, true)
        }
        Command::Member { ideal, f } => {
            let (i, ord) = load_ideal(ideal)?;
            let f = poly_arg(f, "f", i.roster())?;
            let gb = groebner::buchberger_with(&i, ord, &lim)?;
            let (yes, nf) = groebner::ideal_membership(&f, &gb)?;
            Outcome::new(
                json!({"member": yes, "normal_form": nf.to_string()}),
                format!("member: {yes}\nnormal form: {nf}\n"),
                true,
            )
        }
        Command::RadicalMember { ideal, f } => {
            let (i, _) = load_ideal(ideal)?;
            let f = poly_arg(f, "f", i.roster())?;
            let c = groebner::radical_membership_with(&f, &i, &lim)?;
            let pw = c.power.map_or("none ≤ 4".to_string(), |k| k.to_string());
            Outcome::new(value(&c), format!("in radical: {}\npower witness: {pw}\n", c.member), true)
        }
        Command::Hilbert { ideal } => {
            let (i, ord) = load_ideal(ideal)?;
            let hp = groebner::hilbert_polynomial_with(&i, ord, &lim)?;
            Outcome::new(value(&hp), format!("{hp}\n"), true)
        }
        Command::Example { which, long } => match which {
            Which::D4 => {
                let r = replay::example_d4(&lim)?;
                let table = lines([
                    format!("W1: [{}]  matches: {}", r.w1_parameterization.join(" : "), r.w1_matches),
                    format!("W2: [{}]  matches: {}", r.w2_parameterization.join(" : "), r.w2_matches),
                    format!("I(W1): {}", r.ideal_w1.join(", ")),
                    format!("I(W2): {}", r.ideal_w2.join(", ")),
                    format!("HP(W1) = {}, HP(W2) = {}", r.hilbert_w1, r.hilbert_w2),
                    format!("{} in radical of I(W1) + I(W2): {}", r.linear_form, r.radical.member),
                    format!("HP(I(W1) + I(W2) + ({})) = {}", r.linear_form, r.intersection_hilbert),
                    format!("verified: {}", r.verified),
                ]);
                Outcome::new(value(&r), table, r.verified)
            }
            Which::D5 => {
                let lim = if *long && cli.timeout.is_none() { Limits::with_timeout(replay::Y_TIMEOUT) } else { lim };
                let r = replay::example_d5(*long, &lim)?;
                let mut t: Vec<String> = r
                    .alpha
                    .iter()
                    .map(|a| {
                        let mark = if a.matches { String::new() } else { format!("   [expected {}]", a.expected) };
                        format!("α{},{} = {}{mark}", a.i, a.j, a.computed)
                    })
                    .collect();
                t.push(format!("HP(X) = {}  closed form: {}", r.x_hilbert, r.x_matches_closed_form));
                match &r.y_hilbert {
                    Some(hp) => t.push(format!("HP(Y) = {hp}  ({})", r.y_status)),
                    None => t.push(format!("HP(Y): {}", r.y_status)),
                }
                t.push(format!("verified: {}", r.verified));
                Outcome::new(value(&r), lines(t), r.verified)
            }
        },
    })
}

fn basis_table(gb: &GBasis) -> String {
    lines(gb.elements().iter().map(ToString::to_string))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let rendered = match cli.format {
                Format::Json => format!("{}\n", to_json_pretty(&out.json)),
                Format::Table => out.table.clone(),
            };
            if let Some(path) = &cli.out {
                if let Err(e) = fs::write(path, format!("{}\n", to_json_pretty(&out.json))) {
                    eprintln!("error: {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            }
            print!("{rendered}");
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("falsified: a check did not pass");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_falsification() { 1 } else { 2 })
        }
    }
}
