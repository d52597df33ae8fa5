//! Index-deterministic parallel map: results land in their input slot, so
//! the output is identical for any worker count.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

pub fn par_map_indexed<T, F>(n: usize, jobs: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync,
{
    if jobs <= 1 || n <= 1 {
        return (0..n).map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let mut out: Vec<Option<T>> = (0..n).map(|_| None).collect();
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(usize, T)>();
        for _ in 0..jobs.min(n) {
            let tx = tx.clone();
            let next = &next;
            let f = &f;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                if tx.send((i, f(i))).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        while let Ok((i, v)) = rx.recv() {
            out[i] = Some(v);
        }
    });
    out.into_iter()
        .map(|v| v.expect("every index computed"))
        .collect()
}
