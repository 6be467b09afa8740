//! Subcommand bodies, generic over the working precision.

use std::io::Write;

use gentrig::coeffs::{c_poly, d_poly, t_poly, RationalPolynomial};
use gentrig::expansions::{
    ci_expand, f_expand, fresnel, g_expand, m2_expand, phi_expand, si_expand, ti_expand, x_expand, CertifiedValue,
    EvalRequest, Truncation,
};
use gentrig::terminant::{all_bounds, best_bound, terminant_eval, TerminantQuery};
use gentrig::{oracle, zeros, DoubleDouble, Real};
use num_complex::Complex;
use num_traits::Zero;

use crate::args::{CoeffKind, CoeffsArgs, EvalArgs, EvalFn, OracleArgs, OracleFn, TableArgs, TableFn, TerminantArgs, ZerosArgs};
use crate::error::{CliError, CliResult};
use crate::input::{self, to, to_complex};
use crate::output::{Emitter, Record, Value};

type D = DoubleDouble;

/// Real when the imaginary part is zero, complex otherwise.
fn number<T: Real>(z: Complex<T>) -> Value {
    if z.im.is_zero() {
        Value::real(z.re)
    } else {
        Value::complex(z)
    }
}

fn real_only(z: Complex<D>, what: &str) -> CliResult<D> {
    if z.im.is_zero() {
        Ok(z.re)
    } else {
        Err(CliError::usage(format!("{what} must be real")))
    }
}

fn certified<T: Real>(mut r: Record, cv: &CertifiedValue<T>) -> Record {
    r.push("value", Value::complex(cv.value));
    r.push("error_bound", Value::opt_real(cv.error_bound));
    r.push("truncation_bound", Value::opt_real(cv.truncation_bound));
    r.push("rounding_bound", Value::real(cv.rounding_bound));
    r.push("terms_used", Value::Int(cv.terms_used as i64));
    let how = match cv.truncation {
        Truncation::Requested => "requested",
        Truncation::Optimal => "optimal",
    };
    r.push("truncation", Value::text(how));
    r.push("sign_certificate", cv.sign_certificate.map_or(Value::Null, |s| Value::text(s.name())));
    r.push("first_neglected", Value::real(cv.first_neglected));
    r.push("proposition", cv.proposition.map_or(Value::Null, |p| Value::text(p.name())));
    r
}

type Expand<T> = fn(&EvalRequest<T>) -> gentrig::Result<CertifiedValue<T>>;

fn expander<T: Real>(f: EvalFn) -> Option<Expand<T>> {
    Some(match f {
        EvalFn::F => f_expand::<T>,
        EvalFn::G => g_expand::<T>,
        EvalFn::M2 => m2_expand::<T>,
        EvalFn::Phi => phi_expand::<T>,
        EvalFn::X => x_expand::<T>,
        EvalFn::Ti => ti_expand::<T>,
        EvalFn::Si => si_expand::<T>,
        EvalFn::Ci => ci_expand::<T>,
        EvalFn::FresnelS | EvalFn::FresnelC | EvalFn::FresnelF => return None,
    })
}

fn fn_name(f: EvalFn) -> &'static str {
    match f {
        EvalFn::F => "f",
        EvalFn::G => "g",
        EvalFn::M2 => "m2",
        EvalFn::Phi => "phi",
        EvalFn::X => "x",
        EvalFn::Ti => "ti",
        EvalFn::Si => "si",
        EvalFn::Ci => "ci",
        EvalFn::FresnelS => "fresnelS",
        EvalFn::FresnelC => "fresnelC",
        EvalFn::FresnelF => "fresnelF",
    }
}

pub fn eval<T: Real, W: Write>(args: &EvalArgs, em: &mut Emitter<W>) -> CliResult<()> {
    let z = to_complex::<T>(input::complex(&args.z)?);
    let name = fn_name(args.function);
    let Some(expand) = expander::<T>(args.function) else {
        let fr = fresnel(z)?;
        let value = match args.function {
            EvalFn::FresnelS => fr.s,
            EvalFn::FresnelC => fr.c,
            _ => fr.tail,
        };
        let r = Record::new()
            .with("fn", Value::text(name))
            .with("z", Value::complex(z))
            .with("value", Value::complex(value))
            .with("from_expansion", Value::Bool(fr.from_expansion));
        return em.emit(&r);
    };
    let a = input::complex(&args.a)?;
    if !a.im.is_zero() && !matches!(args.function, EvalFn::F | EvalFn::G | EvalFn::M2) {
        return Err(CliError::usage(format!("{name} needs a real order a")));
    }
    let alpha: T = to(input::real(&args.alpha)?);
    let req = EvalRequest::complex_a(to_complex(a), z, input::order(&args.order)?).with_alpha(alpha);
    let cv = expand(&req)?;
    let mut r = Record::new().with("fn", Value::text(name)).with("a", number(req.a)).with("z", Value::complex(z));
    if args.function == EvalFn::Ti {
        r.push("alpha", Value::real(alpha));
    }
    em.emit(&certified(r, &cv))
}

pub fn oracle<T: Real, W: Write>(args: &OracleArgs, em: &mut Emitter<W>) -> CliResult<()> {
    let a = input::complex(&args.a)?;
    let z_in = input::complex(&args.z)?;
    let (ac, z) = (to_complex::<T>(a), to_complex::<T>(z_in));
    let alpha: T = to(input::real(&args.alpha)?);
    let real_a = || real_only(a, "a").map(to::<T>);
    let on_axis = z.im.is_zero() && z.re > T::zero();
    let (name, value) = match args.function {
        OracleFn::F => ("f", oracle::f(ac, z)?),
        OracleFn::G => ("g", oracle::g(ac, z)?),
        OracleFn::M2 => ("m2", oracle::m2(ac, z)?),
        OracleFn::Ti => ("ti", oracle::ti(ac, z, alpha)?),
        OracleFn::Phi if on_axis => ("phi", Complex::new(oracle::phase_real(real_a()?, z.re)?, T::zero())),
        OracleFn::Phi => ("phi", oracle::phase(real_a()?, z)?),
        OracleFn::X if on_axis => ("x", Complex::new(oracle::invert_phase(real_a()?, z.re)?, T::zero())),
        OracleFn::X => ("x", oracle::invert_phase_complex(real_a()?, z)?),
        OracleFn::Gamma => ("gamma", oracle::incomplete_gamma_upper(real_a()?, z)?),
    };
    let mut r = Record::new().with("fn", Value::text(name)).with("a", number(ac)).with("z", Value::complex(z));
    if args.function == OracleFn::Ti {
        r.push("alpha", Value::real(alpha));
    }
    r.push("value", Value::complex(value));
    em.emit(&r)
}

fn poly_record(kind: &str, n: usize, k: Option<usize>, p: &RationalPolynomial) -> Record {
    let mut r = Record::new().with("kind", Value::text(kind)).with("n", Value::Int(n as i64));
    if let Some(k) = k {
        r.push("k", Value::Int(k as i64));
    }
    r.with("polynomial", Value::text(p.to_string())).with("coefficients", Value::List(p.coefficient_strings()))
}

pub fn coeffs<W: Write>(args: &CoeffsArgs, em: &mut Emitter<W>) -> CliResult<()> {
    let range = input::int_range(&args.n)?;
    if *range.start() < 0 {
        return Err(CliError::usage("coefficient index n must be non-negative"));
    }
    for n in range.map(|n| n as usize) {
        match args.kind {
            CoeffKind::T => em.emit(&poly_record("t", n, None, &t_poly(n)?))?,
            CoeffKind::C => em.emit(&poly_record("c", n, None, &c_poly(n)?))?,
            CoeffKind::D => {
                let ks = match args.k {
                    Some(k) => k..=k,
                    None => 1..=n.max(1),
                };
                for k in ks {
                    em.emit(&poly_record("d", n, Some(k), &d_poly(n, k)?))?;
                }
            }
        }
    }
    Ok(())
}

fn zero_record<T: Real>(r: &zeros::ZeroRecord<T>) -> Record {
    let bracket = zeros::literature_bracket(r.a, r.alpha, r.k).ok();
    Record::new()
        .with("k", Value::Int(r.k))
        .with("kappa", Value::real(r.kappa))
        .with("seed", Value::real(r.seed))
        .with("seed_bound", Value::opt_real(r.seed_bound))
        .with("refined", Value::opt_real(r.refined))
        .with("residual", Value::opt_real(r.residual))
        .with("bracket_lo", Value::opt_real(bracket.map(|b| b.0)))
        .with("bracket_hi", Value::opt_real(bracket.map(|b| b.1)))
        .with("seed_terms", Value::Int(r.seed_terms as i64))
        .with("certificate", r.certificate_holds().map_or(Value::Null, Value::Bool))
}

fn zero_records<T: Real>(a: &str, alpha: &str, k_from: Option<i64>, k_to: i64, refine: bool) -> CliResult<Vec<zeros::ZeroRecord<T>>> {
    let a: T = to(input::real(a)?);
    let alpha: T = to(input::real(alpha)?);
    let first = zeros::first_index(a, alpha)?;
    Ok(zeros::enumerate(a, alpha, k_from.unwrap_or(first), k_to, refine)?)
}

pub fn zeros_cmd<T: Real, W: Write>(args: &ZerosArgs, em: &mut Emitter<W>) -> CliResult<()> {
    for r in zero_records::<T>(&args.a, &args.alpha, args.k_from, args.k_to, args.refine)? {
        em.emit(&zero_record(&r))?;
    }
    Ok(())
}

pub fn terminant<T: Real, W: Write>(args: &TerminantArgs, em: &mut Emitter<W>) -> CliResult<()> {
    let p = to_complex::<T>(input::complex(&args.p)?);
    let z = to_complex::<T>(input::complex(&args.z)?);
    let q = TerminantQuery::new(p, z)?;
    let mut r = Record::new().with("p", number(p)).with("z", Value::complex(z)).with("arg", Value::real(q.theta()));
    if !args.bounds_only {
        r.push("value", Value::complex(terminant_eval(&q)?));
    }
    let mut b3_theta = None;
    for b in all_bounds(&q)? {
        r.push(b.proposition.name(), Value::opt_real(b.bound));
        b3_theta = b3_theta.or(b.theta);
    }
    r.push("b3_angle", Value::opt_real(b3_theta));
    let best = best_bound(&q)?;
    r.push("best_bound", Value::opt_real(best.bound));
    r.push("best_proposition", if best.sector_ok { Value::text(best.proposition.name()) } else { Value::Null });
    em.emit(&r)
}

/// `from, from + step, …` up to `to` (inclusive, with a relative slack).
fn grid_points(from: D, to: D, step: D) -> CliResult<Vec<D>> {
    if !(step > D::zero()) || !(to >= from) {
        return Err(CliError::usage("table grid needs z_step > 0 and z_to ≥ z_from"));
    }
    let n = ((to - from) / step).hi();
    let count = (n + 1e-9).floor() as usize + 1;
    if count > 1_000_000 {
        return Err(CliError::usage("table grid has more than 10^6 points"));
    }
    Ok((0..count).map(|j| from + step * D::from(j as f64)).collect())
}

pub fn table<T: Real, W: Write>(args: &TableArgs, em: &mut Emitter<W>) -> CliResult<()> {
    let eval_fn = match args.function {
        TableFn::CoeffsT | TableFn::CoeffsC => {
            for n in 0..=args.n_max {
                let (kind, p) = if args.function == TableFn::CoeffsT { ("t", t_poly(n)?) } else { ("c", c_poly(n)?) };
                em.emit(&poly_record(kind, n, None, &p))?;
            }
            return Ok(());
        }
        TableFn::Zeros => {
            for r in zero_records::<T>(&args.a, &args.alpha, args.k_from, args.k_to, true)? {
                em.emit(&zero_record(&r))?;
            }
            return Ok(());
        }
        TableFn::F => EvalFn::F,
        TableFn::G => EvalFn::G,
        TableFn::M2 => EvalFn::M2,
        TableFn::Phi => EvalFn::Phi,
        TableFn::X => EvalFn::X,
        TableFn::Ti => EvalFn::Ti,
        TableFn::Si => EvalFn::Si,
        TableFn::Ci => EvalFn::Ci,
    };
    let expand = expander::<T>(eval_fn).ok_or_else(|| CliError::usage("function has no table form"))?;
    let a: T = to(real_only(input::complex(&args.a)?, "a")?);
    let alpha: T = to(input::real(&args.alpha)?);
    let order = input::order(&args.order)?;
    let arg = args.arg.as_deref().map(input::angle).transpose()?;
    let pts = grid_points(input::real(&args.z_from)?, input::real(&args.z_to)?, input::real(&args.z_step)?)?;
    for m in pts {
        let z: Complex<T> = match arg {
            Some(th) => to_complex(Complex::from_polar(m, th)),
            None => Complex::new(to(m), T::zero()),
        };
        let cv = expand(&EvalRequest::new(a, z, order).with_alpha(alpha))?;
        let mut r = Record::new().with("fn", Value::text(fn_name(eval_fn))).with("a", Value::real(a));
        if eval_fn == EvalFn::Ti {
            r.push("alpha", Value::real(alpha));
        }
        match arg {
            Some(_) => {
                r.push("z", Value::complex(z));
                r.push("value", Value::complex(cv.value));
            }
            None => {
                r.push("z", Value::real(z.re));
                r.push("value", Value::real(cv.value.re));
            }
        }
        r.push("error_bound", Value::opt_real(cv.error_bound));
        r.push("terms_used", Value::Int(cv.terms_used as i64));
        em.emit(&r)?;
    }
    Ok(())
}
