//! Counterexample shrinking.

use quiverlab_core::Quiver;

/// Remove pendant vertices one at a time while `fails` keeps holding, so a
/// failure is reported on the smallest quiver this reaches.
pub fn shrink(q: &Quiver, fails: impl Fn(&Quiver) -> bool) -> Quiver {
    let mut cur = q.clone();
    'outer: loop {
        for v in 0..cur.n() {
            if cur.degree(v) != 1 {
                continue;
            }
            let keep: Vec<usize> = (0..cur.n()).filter(|&u| u != v).collect();
            let smaller = cur.induced(&keep);
            if fails(&smaller) {
                cur = smaller;
                continue 'outer;
            }
        }
        return cur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strips_tails_while_property_holds() {
        let arrows: Vec<_> = (0..7).map(|i| (i, i + 1, 1)).collect();
        let path = Quiver::new(8, &arrows).unwrap();
        assert_eq!(shrink(&path, |p| p.n() >= 3).n(), 3);
        assert_eq!(shrink(&path, |_| false), path);
    }
}
