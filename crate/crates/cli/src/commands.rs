use pade_core::experiment::{self, ConstructReport, ExperimentPlan, Oracle, SupError};
use pade_core::{
    build, perturb_polynomial, perturb_polynomial_smooth, perturb_rational, Descriptor, Exact, Polynomial,
    RationalFn, Scalar,
};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::output::{float, opt_cell, scalar_cells, sup_cell, Report};
use crate::parse;
use crate::{Cli, Command, ConstructKind, FunctionArgs, Mode, OracleArgs, OracleKind};

fn arg_err(msg: impl Into<String>) -> CliError {
    CliError::Arg(msg.into())
}

fn to_value<T: Serialize>(v: &T) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Io(std::io::Error::other(e)))
}

/// The kebab-case name serde gives a unit variant.
fn label<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn value_name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().map(|p| p.get_name().to_string()).unwrap_or_default()
}

fn cast<S: Scalar>(p: &Polynomial<Exact>) -> Polynomial<S> {
    p.cast(S::from_exact)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str, CliError> {
    v.as_deref().ok_or_else(|| arg_err(format!("--{flag} is required here")))
}

/// Parses and reduces `--num/--den` exactly, then moves to `S`.
fn rational_arg<S: Scalar>(f: &FunctionArgs) -> Result<RationalFn<S>, CliError> {
    let num = parse::polynomial::<Exact>(required(&f.num, "num")?)?;
    let den = parse::polynomial::<Exact>(required(&f.den, "den")?)?;
    let r = RationalFn::reduce(num, den)?;
    Ok(r.cast(S::from_exact))
}

fn polynomial_arg<S: Scalar>(f: &FunctionArgs) -> Result<Polynomial<S>, CliError> {
    Ok(cast(&parse::polynomial::<Exact>(required(&f.poly, "poly")?)?))
}

fn oracle<S: Scalar>(args: &OracleArgs) -> Result<Oracle<S>, CliError> {
    Ok(match args.oracle {
        OracleKind::Exp => Oracle::Exp,
        OracleKind::Geometric => Oracle::Geometric,
        OracleKind::Rational => Oracle::Rational(rational_arg(&args.function)?),
        OracleKind::Polynomial => Oracle::Polynomial(polynomial_arg(&args.function)?),
    })
}

fn oracle_params(args: &OracleArgs) -> Value {
    json!({
        "oracle": value_name(&args.oracle),
        "num": args.function.num,
        "den": args.function.den,
        "poly": args.function.poly,
    })
}

fn merge(mut a: Value, b: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut a, b) {
        a.extend(b);
    }
    a
}

pub fn dispatch<S: Scalar>(cli: &Cli) -> Result<Report, CliError> {
    let common = json!({
        "mode": if cli.mode == Mode::Exact { "exact" } else { "float" },
        "grid_density": cli.grid_density,
        "tol": cli.tol,
    });
    let density = cli.grid_density;
    match &cli.command {
        Command::Table { oracle: o, center, p_max, q_max, radius } => {
            let params = merge(
                merge(common, oracle_params(o)),
                json!({"center": center, "p_max": p_max, "q_max": q_max, "radius": radius}),
            );
            let z0: S = S::from_exact(&parse::scalar(center)?);
            let region = build(Descriptor::Disk { center: z0.to_c64(), radius: parse::real_value(radius)?, density })?;
            let cells = experiment::table(&oracle::<S>(o)?, &z0, *p_max, *q_max, &region, cli.tol)?;
            let csv_rows = cells
                .iter()
                .map(|c| {
                    let [dr, di] = scalar_cells(&c.det);
                    vec![
                        c.p.to_string(),
                        c.q.to_string(),
                        c.member.to_string(),
                        dr,
                        di,
                        float(c.scale),
                        c.predicted.as_ref().map(label).unwrap_or_default(),
                        c.sup_error.as_ref().map(sup_cell).unwrap_or_default(),
                    ]
                })
                .collect();
            Ok(Report {
                command: "table",
                params,
                rows: cells.iter().map(to_value).collect::<Result<_, _>>()?,
                csv_header: header(&["p", "q", "member", "det_re", "det_im", "scale", "predicted", "sup_error"]),
                csv_rows,
            })
        }
        Command::Membership { oracle: o, center, p, q, radius } => {
            let params = merge(
                merge(common, oracle_params(o)),
                json!({"center": center, "p": p, "q": q, "radius": radius}),
            );
            let z0: S = S::from_exact(&parse::scalar(center)?);
            let region = build(Descriptor::Disk { center: z0.to_c64(), radius: parse::real_value(radius)?, density })?;
            let rep = experiment::membership(&oracle::<S>(o)?, &z0, *p, *q, &region, cli.tol)?;
            let [dr, di] = scalar_cells(&rep.det);
            let csv_row = vec![
                rep.p.to_string(),
                rep.q.to_string(),
                rep.member.to_string(),
                dr,
                di,
                float(rep.scale),
                opt_cell(rep.lambda),
                opt_cell(rep.mu),
                label(&rep.predicted),
                opt_cell(rep.agrees),
                rep.max_residual.as_ref().map(sup_cell).unwrap_or_default(),
                opt_cell(rep.exact_reproduction),
                opt_cell(rep.order_defect),
            ];
            Ok(Report {
                command: "membership",
                params,
                rows: vec![to_value(&rep)?],
                csv_header: header(&[
                    "p",
                    "q",
                    "member",
                    "det_re",
                    "det_im",
                    "scale",
                    "lambda",
                    "mu",
                    "predicted",
                    "agrees",
                    "max_residual",
                    "exact_reproduction",
                    "order_defect",
                ]),
                csv_rows: vec![csv_row],
            })
        }
        Command::Construct { kind, function, p, q, eps, order, region, centers } => {
            let params = merge(
                common,
                json!({
                    "kind": value_name(kind),
                    "num": function.num,
                    "den": function.den,
                    "poly": function.poly,
                    "p": p,
                    "q": q,
                    "eps": eps,
                    "order": order,
                    "region": region,
                    "centers": centers,
                }),
            );
            let eps = parse::real_value(eps)?;
            let t = build(parse::region(region, density)?)?;
            let centers: Vec<S> = parse::scalar_list(centers)?.iter().map(S::from_exact).collect();
            let smooth = matches!(kind, ConstructKind::PolySmooth | ConstructKind::RationalSmooth);
            let order = match (smooth, order) {
                (true, Some(n)) => Some(*n),
                (true, None) => return Err(arg_err("smooth constructions need --order")),
                (false, Some(_)) => return Err(arg_err("--order applies to smooth constructions only")),
                (false, None) => None,
            };
            let result = match kind {
                ConstructKind::Poly => perturb_polynomial(&polynomial_arg::<S>(function)?, *p, *q, eps, &t)?,
                ConstructKind::PolySmooth => perturb_polynomial_smooth(
                    &polynomial_arg::<S>(function)?,
                    *p,
                    *q,
                    eps,
                    order.unwrap_or(0),
                    &t,
                )?,
                ConstructKind::Rational | ConstructKind::RationalSmooth => {
                    perturb_rational(&rational_arg::<S>(function)?, *p, *q, eps, &t, order)?
                }
            };
            let rep = experiment::construct_report(&result, &centers, &t, cli.tol)?;
            Ok(Report {
                command: "construct",
                params,
                rows: vec![to_value(&rep)?],
                csv_header: header(&CONSTRUCT_COLUMNS),
                csv_rows: construct_csv(&rep),
            })
        }
        Command::Converge { oracle: o, family, centers, region, max_n, orders } => {
            let params = merge(
                merge(common, oracle_params(o)),
                json!({
                    "family": family,
                    "centers": centers,
                    "region": region,
                    "max_n": max_n,
                    "orders": orders,
                }),
            );
            let plan = ExperimentPlan::<S> {
                oracle: oracle(o)?,
                centers: build(parse::region(centers, density)?)?,
                region: build(parse::region(region, density)?)?,
                indices: parse::family(family)?,
                max_n: *max_n,
                derivative_orders: *orders,
            };
            let rows = experiment::converge(&plan, cli.tol)?;
            let mut cols = vec!["n".to_string(), "p".into(), "q".into(), "member_all_centers".into()];
            cols.extend((0..=*orders).map(|l| format!("sup_error_{l}")));
            let csv_rows = rows
                .iter()
                .map(|r| {
                    let mut cells = vec![
                        r.n.to_string(),
                        r.p.to_string(),
                        r.q.to_string(),
                        r.member_all_centers.to_string(),
                    ];
                    cells.extend(r.sup_error.iter().map(sup_cell));
                    cells
                })
                .collect();
            Ok(Report {
                command: "converge",
                params,
                rows: rows.iter().map(to_value).collect::<Result<_, _>>()?,
                csv_header: cols,
                csv_rows,
            })
        }
    }
}

fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

const CONSTRUCT_COLUMNS: [&str; 19] = [
    "kind",
    "p",
    "q",
    "d_re",
    "d_im",
    "bound_used",
    "halvings",
    "excluded_values",
    "irreducible",
    "approximation_sup",
    "center_re",
    "center_im",
    "member",
    "det_re",
    "det_im",
    "expected_det_re",
    "expected_det_im",
    "order_defect",
    "residual",
];

/// One line per center; `approximation_sup` is the largest sup over all
/// derivative orders.
fn construct_csv(rep: &ConstructReport) -> Vec<Vec<String>> {
    let approx = rep.approximation.iter().fold(SupError::Value(0.0), |acc, s| match (acc, *s) {
        (SupError::Value(a), SupError::Value(b)) => SupError::Value(a.max(b)),
        (SupError::Value(_), other) => other,
        (acc, _) => acc,
    });
    let [d_re, d_im] = scalar_cells(&rep.d);
    rep.centers
        .iter()
        .map(|c| {
            let [cr, ci] = scalar_cells(&c.center);
            let [dr, di] = scalar_cells(&c.det);
            let [er, ei] = c.expected_det.as_ref().map(scalar_cells).unwrap_or_default();
            vec![
                label(&rep.kind),
                rep.p.to_string(),
                rep.q.to_string(),
                d_re.clone(),
                d_im.clone(),
                float(rep.bound_used),
                rep.halvings.to_string(),
                rep.excluded_values.len().to_string(),
                opt_cell(rep.irreducible),
                sup_cell(&approx),
                cr,
                ci,
                c.member.to_string(),
                dr,
                di,
                er,
                ei,
                opt_cell(c.order_defect),
                sup_cell(&c.residual),
            ]
        })
        .collect()
}
