use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::mpsc;

/// Outcome of a pair of semi-decision procedures.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision<Y, N> {
    Yes(Y),
    No(N),
    /// Both sides ran out of steps.
    Undecided { yes_steps: u64, no_steps: u64 },
}

impl<Y, N> Decision<Y, N> {
    pub fn is_yes(&self) -> bool {
        matches!(self, Decision::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Decision::No(_))
    }

    pub fn is_undecided(&self) -> bool {
        matches!(self, Decision::Undecided { .. })
    }
}

enum Outcome<Y, N> {
    Yes(Y),
    No(N),
    YesExhausted(u64),
    NoExhausted(u64),
}

/// Runs both searches on their own threads. Each side is called with step
/// numbers `0, 1, …` and returns `Some` once it has a witness; the first
/// witness wins and the other side is told to stop. Since at most one side can
/// be sound on a given instance, the answer does not depend on scheduling.
pub fn race<Y, N, FY, FN>(mut yes: FY, mut no: FN, steps: u64) -> Decision<Y, N>
where
    Y: Send,
    N: Send,
    FY: FnMut(u64) -> Option<Y> + Send,
    FN: FnMut(u64) -> Option<N> + Send,
{
    let stop = AtomicBool::new(false);
    let (tx, rx) = mpsc::channel();
    std::thread::scope(|scope| {
        let tx_yes = tx.clone();
        let stop_yes = &stop;
        scope.spawn(move || {
            for i in 0..steps {
                if stop_yes.load(Ordering::Relaxed) {
                    return;
                }
                if let Some(w) = yes(i) {
                    let _ = tx_yes.send(Outcome::Yes(w));
                    return;
                }
            }
            let _ = tx_yes.send(Outcome::YesExhausted(steps));
        });
        let stop_no = &stop;
        scope.spawn(move || {
            for i in 0..steps {
                if stop_no.load(Ordering::Relaxed) {
                    return;
                }
                if let Some(w) = no(i) {
                    let _ = tx.send(Outcome::No(w));
                    return;
                }
            }
            let _ = tx.send(Outcome::NoExhausted(steps));
        });
        let mut spent = (None, None);
        for msg in rx.iter() {
            match msg {
                Outcome::Yes(w) => {
                    stop.store(true, Ordering::Relaxed);
                    return Decision::Yes(w);
                }
                Outcome::No(w) => {
                    stop.store(true, Ordering::Relaxed);
                    return Decision::No(w);
                }
                Outcome::YesExhausted(n) => spent.0 = Some(n),
                Outcome::NoExhausted(n) => spent.1 = Some(n),
            }
            if let (Some(yes_steps), Some(no_steps)) = spent {
                return Decision::Undecided { yes_steps, no_steps };
            }
        }
        unreachable!("both workers report before exiting")
    })
}
