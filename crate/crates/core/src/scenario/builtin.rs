//! The two worked examples as scenario text.

pub const EXAMPLE_ONE: &str = "\
# X = (-10, 10) with the usual metric
name example-1
space interval (-10, 10)
branch (-10, 0) -> set {-2}
branch [0, 2] -> interval [0, 5/6 * x]
branch (2, 5] -> interval [0, 2 * x - 5/3]
branch (5, 10) -> set {9}
alpha indicator [0, 2]
zeta 5/6 * s - t
gfun s - t
cg 0
start x0=2 x1=5/3
grid-step 1/8
declare alpha-complete true
declare alpha-continuous true
declare route continuity
";

pub const EXAMPLE_TWO: &str = "\
# X = (0, 1] with the usual metric
name example-2
space interval (0, 1]
branch (0, 1/2) -> set {1/10}
branch [1/2, 3/4] -> set {3/5, 3/4}
branch (3/4, 1] -> set {4/5}
alpha indicator [1/2, 1]
zeta 5/6 * s - t
gfun s - t
cg 0
start x0=1/2 x1=3/4
grid-step 1/8
declare alpha-complete true
declare alpha-continuous false
declare route iv-prime
";

pub fn builtin_text(id: u8) -> Option<&'static str> {
    match id {
        1 => Some(EXAMPLE_ONE),
        2 => Some(EXAMPLE_TWO),
        _ => None,
    }
}
