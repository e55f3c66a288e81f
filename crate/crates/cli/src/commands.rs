use std::fmt::Write as _;

use num_bigint::BigUint;
use num_traits::Zero;

use modgeo::counting::{self, CumulativeOptions, Family};
use modgeo::enumerate::{self, ClassFilter};
use modgeo::geometry;
use modgeo::report::{self, Value};
use modgeo::verify::{self, Suite};
use modgeo::{BinaryWord, Error, Exec, Result, Sign};

use crate::table::{Cell, Table};
use crate::{
    AlphaArgs, AuditArgs, CountArgs, DepthArgs, EnumerateArgs, GrowthArgs, Output, Table1Args,
    VerifyArgs,
};

fn usage(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

fn done(table: Table) -> Result<Output> {
    Ok(Output {
        table,
        note: None,
        failed: false,
    })
}

fn family_with_primitive(family: Family, primitive: bool) -> Result<Family> {
    Ok(match (family, primitive) {
        (f, false) => f,
        (Family::Classes | Family::Primitive, true) => Family::Primitive,
        (Family::Reciprocal | Family::ReciprocalPrimitive, true) => Family::ReciprocalPrimitive,
        (f @ (Family::LowLying | Family::LowLyingReciprocal), true) => f,
        (Family::Compositions, true) => {
            return Err(usage("--primitive does not apply to compositions"))
        }
    })
}

/// Count at one index; low-lying classes and primitive low-lying reciprocal
/// classes have no closed form and are enumerated.
fn count_at(
    family: Family,
    n: u32,
    m: Option<u32>,
    primitive: bool,
    exec: Exec,
) -> Result<BigUint> {
    match family {
        Family::LowLying => {
            let m = m.ok_or_else(|| usage("family lowlying requires --m"))?;
            let mut filter = ClassFilter::low_lying(m);
            if primitive {
                filter = filter.and_primitive();
            }
            Ok(enumerate::count_classes(n, filter, exec)?.into())
        }
        Family::LowLyingReciprocal if primitive => {
            let m = m.ok_or_else(|| usage("family lowlying-reciprocal requires --m"))?;
            Ok(enumerate::count_reciprocal_classes(n, Some(m), true, exec)?.into())
        }
        f => counting::per_length(f, n, m),
    }
}

pub(crate) fn count(a: CountArgs, exec: Exec) -> Result<Output> {
    let family = family_with_primitive(a.family.parse()?, a.primitive)?;
    if a.t < 1 {
        return Err(usage("--t must be at least 1"));
    }
    if a.torsion && !a.cumulative {
        return Err(usage("--torsion requires --cumulative"));
    }
    let enumerated =
        family == Family::LowLying || (family == Family::LowLyingReciprocal && a.primitive);
    let exact = if !a.cumulative {
        count_at(family, a.t, a.m, a.primitive, exec)?
    } else if enumerated {
        let mut sum = BigUint::zero();
        for n in 1..=a.t {
            sum += count_at(family, n, a.m, a.primitive, exec)?;
        }
        sum
    } else {
        counting::cumulative(
            family,
            a.t,
            CumulativeOptions {
                torsion: a.torsion,
                m: a.m,
            },
        )?
    };
    let target = if enumerated && a.primitive {
        None
    } else {
        counting::count_target(family, a.t, a.m, a.cumulative)
    };
    let mut table = Table::new(&["family", "t", "m", "cumulative", "exact", "target"]);
    table.push(vec![
        Cell::str(family),
        Cell::int(a.t),
        Cell::opt(a.m, Cell::int),
        Cell::Bool(a.cumulative),
        Cell::big(&exact),
        Cell::opt(target, Cell::Real),
    ]);
    done(table)
}

pub(crate) fn enumerate(a: EnumerateArgs, exec: Exec) -> Result<Output> {
    let family = family_with_primitive(a.family.parse()?, a.primitive)?;
    let need_m = || {
        a.m.ok_or_else(|| usage(format!("family {family} requires --m")))
    };
    match family {
        Family::Classes | Family::Primitive | Family::LowLying => {
            let mut filter = match family {
                Family::LowLying => ClassFilter::low_lying(need_m()?),
                _ => ClassFilter::all(),
            };
            if family == Family::Primitive || a.primitive {
                filter = filter.and_primitive();
            }
            let mut table = Table::new(&["word", "tau", "max_run", "primitive"]);
            for w in enumerate::classes(a.t, filter, exec)? {
                table.push(vec![
                    Cell::str(w),
                    Cell::int(w.len()),
                    Cell::int(w.max_cyclic_run()),
                    Cell::Bool(w.is_primitive()),
                ]);
            }
            done(table)
        }
        Family::Reciprocal | Family::ReciprocalPrimitive | Family::LowLyingReciprocal => {
            let m = match family {
                Family::LowLyingReciprocal => Some(need_m()?),
                _ => None,
            };
            let primitive_only = family == Family::ReciprocalPrimitive || a.primitive;
            let mut table = Table::new(&["word", "t", "k0", "primitive", "composition"]);
            for h in enumerate::reciprocal_classes(a.t, m, exec)? {
                if primitive_only && !h.is_primitive() {
                    continue;
                }
                table.push(vec![
                    Cell::str(h),
                    Cell::int(h.t()),
                    Cell::int(h.k0()),
                    Cell::Bool(h.is_primitive()),
                    Cell::str(enumerate::phi(&h)?),
                ]);
            }
            done(table)
        }
        Family::Compositions => {
            let m = need_m()?;
            let mut comps = enumerate::reciprocal_classes(a.t, Some(m), exec)?
                .iter()
                .map(enumerate::phi)
                .collect::<Result<Vec<_>>>()?;
            comps.sort();
            let mut table = Table::new(&["composition", "parts", "max_part"]);
            for c in comps {
                table.push(vec![
                    Cell::str(&c),
                    Cell::int(c.parts().len()),
                    Cell::int(c.max_part()),
                ]);
            }
            done(table)
        }
    }
}

pub(crate) fn alpha(a: AlphaArgs) -> Result<Output> {
    let data = counting::alpha(a.m, a.tol)?;
    let mut table = Table::new(&["m", "alpha", "d", "residual", "lower", "upper"]);
    table.push(vec![
        Cell::int(a.m),
        Cell::Real(data.alpha),
        Cell::Real(data.d),
        Cell::Real(data.residual),
        Cell::Real(data.lower),
        Cell::Real(data.upper),
    ]);
    done(table)
}

pub(crate) fn verify(a: VerifyArgs, exec: Exec) -> Result<Output> {
    let suite: Suite = a.suite.parse()?;
    let checks = verify::run_suite(suite, a.tmax, exec)?;
    let mut table = Table::new(&["suite", "check", "passed", "detail"]);
    let mut note = String::new();
    let mut failed = 0;
    for c in &checks {
        if !c.passed {
            failed += 1;
            let _ = writeln!(note, "FAILED {} / {}: {}", c.suite, c.name, c.detail);
        }
        table.push(vec![
            Cell::str(c.suite),
            Cell::str(c.name),
            Cell::Bool(c.passed),
            Cell::str(&c.detail),
        ]);
    }
    let _ = writeln!(note, "{} checks, {failed} failed", checks.len());
    Ok(Output {
        table,
        note: Some(note),
        failed: failed > 0,
    })
}

pub(crate) fn growth(a: GrowthArgs, exec: Exec) -> Result<Output> {
    let rows = report::growth(a.item, a.t, a.m, a.oracle_max, exec)?;
    let mut table = Table::new(&["t", "exact", "target", "ratio", "source"]);
    for r in rows {
        table.push(vec![
            Cell::int(r.t),
            Cell::big(&r.exact),
            Cell::Real(r.target),
            Cell::Real(r.ratio),
            Cell::str(r.source),
        ]);
    }
    done(table)
}

pub(crate) fn table1(a: Table1Args, exec: Exec) -> Result<Output> {
    let rows = report::table1(a.t, a.m, a.oracle_max, exec)?;
    let mut table = Table::new(&[
        "family",
        "group_length",
        "relation",
        "formula",
        "enumerated",
        "agree",
    ]);
    let mut failed = false;
    for r in rows {
        failed |= r.agree == Some(false);
        table.push(vec![
            Cell::str(r.family),
            Cell::int(r.group_length),
            Cell::str(r.relation),
            match &r.formula {
                Value::Int(n) => Cell::big(n),
                Value::Real(x) => Cell::Real(*x),
            },
            Cell::opt(r.enumerated.as_ref(), Cell::big),
            Cell::opt(r.agree, Cell::Bool),
        ]);
    }
    Ok(Output {
        table,
        note: None,
        failed,
    })
}

/// `abaB`-style syllables to signs: `ab` is `+`, `aB` is `-`. A leading
/// `b`-syllable is moved to the end, since words are read cyclically.
pub(crate) fn parse_syllables(s: &str) -> Result<BinaryWord> {
    let mut chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
    if matches!(chars.first(), Some('b' | 'B')) {
        chars.rotate_left(1);
    }
    if chars.is_empty() || !chars.len().is_multiple_of(2) {
        return Err(usage(format!("{s:?} is not an alternating (ab)-word")));
    }
    let signs = chars
        .chunks(2)
        .map(|pair| match pair {
            ['a', 'b'] => Ok(Sign::Plus),
            ['a', 'B'] => Ok(Sign::Minus),
            [x, y] => Err(usage(format!("syllable {x}{y} in {s:?} is not ab or aB"))),
            _ => unreachable!("chunks of two"),
        })
        .collect::<Result<Vec<_>>>()?;
    BinaryWord::new(&signs)
}

pub(crate) fn depth(a: DepthArgs) -> Result<Output> {
    let w: BinaryWord = match (a.word, a.syllables) {
        (Some(word), _) => word.parse()?,
        (None, Some(s)) => parse_syllables(&s)?,
        (None, None) => return Err(usage("one of --word or --syllables is required")),
    };
    let r = geometry::max_depth(&w)?;
    let mut table = Table::new(&[
        "word",
        "tau",
        "max_run",
        "trace_abs",
        "length",
        "apex",
        "depth",
        "winding_lo",
        "winding_hi",
        "min_c",
        "bfs_agrees",
    ]);
    table.push(vec![
        Cell::str(r.word),
        Cell::int(r.word.len()),
        Cell::int(r.max_run),
        Cell::big(&r.trace_abs),
        Cell::Real(r.geo_length),
        Cell::Real(r.apex),
        Cell::Real(r.depth),
        Cell::int(r.winding_bracket.0),
        Cell::int(r.winding_bracket.1),
        Cell::big(&r.min_c),
        Cell::Bool(r.bfs_agrees),
    ]);
    done(table)
}

pub(crate) fn audit(a: AuditArgs, exec: Exec) -> Result<Output> {
    let report = geometry::depth_audit(a.tmax, exec)?;
    let mut table = Table::new(&[
        "word",
        "tau",
        "max_run",
        "trace_abs",
        "length",
        "apex",
        "depth",
        "paper_bracket_hit",
        "shifted_bracket_hit",
    ]);
    for r in &report.rows {
        table.push(vec![
            Cell::str(r.word),
            Cell::int(r.tau),
            Cell::int(r.max_run),
            Cell::big(&r.trace_abs),
            Cell::Real(r.length),
            Cell::Real(r.apex),
            Cell::Real(r.depth),
            Cell::Bool(r.run_bracket_hit),
            Cell::Bool(r.shifted_bracket_hit),
        ]);
    }
    let s = &report.summary;
    let mut note = format!(
        "classes {}\nrun bracket {}\nshifted bracket {}\nneither {}\nwidened bracket {:.6}\nboundary hits {}\nsearch disagreements {}\nmax_run,run,shifted,neither\n",
        s.classes,
        s.run_hits,
        s.shifted_hits,
        s.neither,
        s.widened_fraction(),
        s.boundary_hits,
        s.bfs_disagreements,
    );
    for (k, tally) in &s.by_run {
        let _ = writeln!(
            note,
            "{k},{},{},{}",
            tally.run, tally.shifted, tally.neither
        );
    }
    Ok(Output {
        table,
        note: Some(note),
        failed: false,
    })
}
