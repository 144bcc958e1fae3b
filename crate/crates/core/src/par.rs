//! Data-parallel sweeps. With the `parallel` feature these run on the rayon
//! pool; without it they are plain sequential iterators with the same output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}

pub fn map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_range<R, F>(len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

/// First `Some` in item order, so results do not depend on scheduling.
pub fn find_map_first<T, R, F>(items: &[T], f: F) -> Option<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Option<R> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        items.par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().find_map(f)
    }
}

/// Runs `f` on a dedicated pool of `threads` workers (`0` keeps the global pool).
pub fn with_threads<R, F>(threads: usize, f: F) -> R
where
    R: Send,
    F: FnOnce() -> R + Send,
{
    #[cfg(feature = "parallel")]
    {
        if threads == 0 {
            return f();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(f),
            Err(_) => f(),
        }
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = threads;
        f()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved() {
        let v: Vec<u32> = (0..1000).collect();
        assert_eq!(map(&v, |x| x * 2), v.iter().map(|x| x * 2).collect::<Vec<_>>());
        assert_eq!(map_range(5, |k| k), vec![0, 1, 2, 3, 4]);
        assert_eq!(find_map_first(&v, |&x| (x % 7 == 6).then_some(x)), Some(6));
        assert_eq!(with_threads(1, || map_range(3, |k| k + 1)), vec![1, 2, 3]);
    }
}
