use super::FiniteQuandle;

/// Structural flags of a finite quandle, each decided exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Predicates {
    /// `x * y = x` for all `x, y`.
    pub trivial: bool,
    /// Every left translation `L_x: y -> x * y` is a bijection.
    pub latin: bool,
    /// Every left translation is injective.
    pub semi_latin: bool,
    /// Every right translation squares to the identity.
    pub involutary: bool,
    pub commutative: bool,
    /// Every ordered pair `x != y` equals `(a * b, b * a)` for some `a, b`.
    /// False for the one-element quandle, which is commutative.
    pub strongly_non_commutative: bool,
    /// The inner automorphism group acts transitively.
    pub connected: bool,
}

pub fn predicates(q: &FiniteQuandle) -> Predicates {
    let n = q.order();
    let all = |f: &dyn Fn(usize, usize) -> bool| (0..n).all(|x| (0..n).all(|y| f(x, y)));
    let trivial = all(&|x, y| q.mul(x, y) == x);
    let semi_latin = (0..n).all(|x| {
        let mut seen = vec![false; n];
        q.row(x).iter().all(|&p| !std::mem::replace(&mut seen[p], true))
    });
    let involutary = all(&|x, y| q.mul(q.mul(x, y), y) == x);
    let commutative = all(&|x, y| q.mul(x, y) == q.mul(y, x));
    let strongly_non_commutative = n >= 2 && {
        let mut hit = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                hit[q.mul(a, b) * n + q.mul(b, a)] = true;
            }
        }
        all(&|x, y| x == y || hit[x * n + y])
    };
    Predicates {
        trivial,
        latin: semi_latin,
        semi_latin,
        involutary,
        commutative,
        strongly_non_commutative,
        connected: inner_orbits(q).len() == 1,
    }
}

/// Orbits of the group generated by the right translations, each sorted,
/// listed by smallest member.
pub fn inner_orbits(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.order();
    let mut orbit_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut members = vec![start];
        orbit_of[start] = id;
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            for y in 0..n {
                let z = q.mul(x, y);
                if orbit_of[z] == usize::MAX {
                    orbit_of[z] = id;
                    members.push(z);
                }
            }
            k += 1;
        }
        members.sort_unstable();
        orbits.push(members);
    }
    orbits
}
