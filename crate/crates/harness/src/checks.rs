//! Check records, execution context and the retry policy.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use u21_core::fields::FieldTower;
use u21_core::group::gamma::GammaGroup;
use u21_core::group::{Group, KTag};
use u21_core::induction::Induction;
use u21_core::laurent::LocalField;
use u21_core::weights::catalog::catalog;
use u21_core::weights::Weight;
use u21_core::{Error, Result};

use crate::report::{Record, Status};

/// Parameters shared by every check of a run.
#[derive(Clone, Debug)]
pub struct Ctx {
    pub tower: FieldTower,
    pub prec: i32,
    pub nmax: i32,
    pub seed: u64,
}

impl Ctx {
    pub fn group(&self) -> Group {
        Group::new(LocalField::new(self.tower.clone(), self.prec))
    }

    pub fn gamma(&self, tag: KTag) -> GammaGroup {
        GammaGroup::new(self.tower.clone(), tag)
    }

    /// The named weights of the catalog, regular constituents included.
    pub fn weights(&self, tag: KTag) -> Result<Vec<(String, Weight)>> {
        catalog(&self.gamma(tag), true)
    }

    pub fn weight(&self, tag: KTag, name: &str) -> Result<Weight> {
        self.weights(tag)?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, w)| w)
            .ok_or(Error::NotApplicable("weight not in catalog"))
    }

    pub fn induction(&self, w: Weight) -> Result<Induction> {
        Ok(Induction::new(self.group(), w)?.with_n_max(self.nmax))
    }

    /// A generator seeded by the run seed and the check id.
    pub fn rng(&self, id: &str) -> ChaCha8Rng {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for b in id.bytes() {
            h = (h ^ b as u64).wrapping_mul(0x100_0000_01b3);
        }
        ChaCha8Rng::seed_from_u64(self.seed ^ h)
    }

    /// The same run at doubled precision.
    pub fn doubled(&self) -> Ctx {
        Ctx { prec: 2 * self.prec, nmax: self.prec - 2, ..self.clone() }
    }
}

/// What a check saw.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub expected: String,
    pub observed: String,
    pub pass: bool,
}

impl Outcome {
    pub fn compare<T: std::fmt::Display + PartialEq>(expected: T, observed: T) -> Outcome {
        Outcome { pass: expected == observed, expected: expected.to_string(), observed: observed.to_string() }
    }

    /// A boolean claim; `observed` describes the first failure when false.
    pub fn holds(claim: &str, failure: Option<String>) -> Outcome {
        match failure {
            None => Outcome { expected: claim.into(), observed: claim.into(), pass: true },
            Some(why) => Outcome { expected: claim.into(), observed: why, pass: false },
        }
    }
}

pub type Body = Box<dyn Fn(&Ctx) -> Result<Outcome> + Send + Sync>;

pub struct Check {
    pub id: String,
    pub label: &'static str,
    pub criterion: u8,
    pub body: Body,
}

impl Check {
    pub fn new<F>(id: impl Into<String>, label: &'static str, criterion: u8, body: F) -> Check
    where
        F: Fn(&Ctx) -> Result<Outcome> + Send + Sync + 'static,
    {
        Check { id: id.into(), label, criterion, body: Box::new(body) }
    }
}

fn precision_limited(e: &Error) -> bool {
    matches!(
        e,
        Error::IndeterminateMembership | Error::InsufficientPrecision | Error::PrecisionBudgetExceeded { .. }
    )
}

/// Runs one check, retrying once at doubled precision when the first
/// attempt ran out of precision.
pub fn run_one(check: &Check, ctx: &Ctx, timings: bool) -> Record {
    let start = Instant::now();
    let mut result = (check.body)(ctx);
    let mut note = "";
    if matches!(&result, Err(e) if precision_limited(e)) {
        result = (check.body)(&ctx.doubled());
        note = " (at doubled precision)";
    }
    let ms = if timings { start.elapsed().as_millis() as u64 } else { 0 };
    let (status, expected, observed) = match result {
        Ok(o) => {
            let s = if o.pass { Status::Pass } else { Status::Fail };
            (s, o.expected, format!("{}{note}", o.observed))
        }
        Err(e) => (Status::Indeterminate, String::from("a decided result"), format!("error: {e}{note}")),
    };
    Record { id: check.id.clone(), label: check.label.into(), criterion: check.criterion, status, expected, observed, ms }
}

/// Runs all checks on `threads` workers; records keep the order of `checks`.
pub fn run_all(checks: &[Check], ctx: &Ctx, threads: usize, timings: bool) -> Vec<Record> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Record>>> = Mutex::new(vec![None; checks.len()]);
    std::thread::scope(|s| {
        for _ in 0..threads.max(1) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = checks.get(i) else { break };
                let r = run_one(c, ctx, timings);
                slots.lock().expect("no poisoned worker")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("no poisoned worker").into_iter().map(|r| r.expect("every check ran")).collect()
}

/// Renders a `Result` for the observed column.
pub fn show<T: std::fmt::Display>(r: &Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use u21_core::fields::build_tower;

    fn ctx() -> Ctx {
        Ctx { tower: build_tower(3, 1).unwrap(), prec: 16, nmax: 4, seed: 7 }
    }

    #[test]
    fn retries_at_doubled_precision() {
        let c = Check::new("x", "l", 1, |ctx: &Ctx| {
            if ctx.prec < 32 {
                Err(Error::InsufficientPrecision)
            } else {
                Ok(Outcome::compare(1, 1))
            }
        });
        let r = run_one(&c, &ctx(), false);
        assert_eq!(r.status, Status::Pass);
        assert!(r.observed.contains("doubled"));
        let bad = Check::new("y", "l", 1, |_: &Ctx| Err::<Outcome, _>(Error::DegenerateWeight));
        assert_eq!(run_one(&bad, &ctx(), false).status, Status::Indeterminate);
    }

    #[test]
    fn parallel_runs_keep_order() {
        let checks: Vec<Check> =
            (0..9).map(|i| Check::new(format!("c{i}"), "l", 1, move |_: &Ctx| Ok(Outcome::compare(i, i % 4)))).collect();
        let rs = run_all(&checks, &ctx(), 3, false);
        let ids: Vec<&str> = rs.iter().map(|r| r.id.as_str()).collect();
        assert_eq!(ids, ["c0", "c1", "c2", "c3", "c4", "c5", "c6", "c7", "c8"]);
        assert_eq!(rs.iter().filter(|r| r.status == Status::Pass).count(), 4);
    }

    #[test]
    fn seeds_depend_on_id() {
        use rand::Rng;
        let c = ctx();
        assert_eq!(c.rng("a").gen::<u64>(), c.rng("a").gen::<u64>());
        assert_ne!(c.rng("a").gen::<u64>(), c.rng("b").gen::<u64>());
    }
}
