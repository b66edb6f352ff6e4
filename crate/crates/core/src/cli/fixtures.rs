//! Named input pairs shipped with the tool.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub about: &'static str,
    pub f: &'static str,
    pub g: &'static str,
    /// Laurent in y; analysed through the meromorphic reduction.
    pub laurent: bool,
}

const fn pair(name: &'static str, about: &'static str, f: &'static str, g: &'static str) -> Fixture {
    Fixture {
        name,
        about,
        f,
        g,
        laurent: false,
    }
}

pub const FIXTURES: &[Fixture] = &[
    pair(
        "ex1.1",
        "three-root pair, e=1, E=2, A=B=1",
        "(x+y)*(x - y^2 + y^3)*(x + y^2 + y^3)",
        "(x-y)*(x - y^2 - y^3)*(x + y^2 - y^3)",
    ),
    pair(
        "ex1.1-b",
        "three-root pair, e=1, E=2, A=1, B=-1",
        "(x+y)*(x - y^2 + y^3)*(x + y^2 - y^3)",
        "(x-y)*(x - y^2 - y^3)*(x + y^2 + y^3)",
    ),
    pair(
        "ex1.1-e2",
        "three-root pair, e=2, E=3, A=B=1",
        "(x+y)*(x - y^3 + y^4)*(x + y^3 + y^4)",
        "(x-y)*(x - y^3 - y^4)*(x + y^3 - y^4)",
    ),
    pair(
        "ex1.1-e2-b",
        "three-root pair, e=2, E=3, A=1, B=-1",
        "(x+y)*(x - y^3 + y^4)*(x + y^3 - y^4)",
        "(x-y)*(x - y^3 - y^4)*(x + y^3 + y^4)",
    ),
    pair("sec2", "one bar, no polar roots", "x", "x^2 - y^2"),
    pair("ex6.1", "e=7, N=1, E=8", "(x^2 - y^16)*((x-y)^2 - y^18)", "(x + y^9)*(x + y)"),
    pair(
        "ex6.1-e9",
        "e=7, N=1, E=9: same tree as ex6.1",
        "(x^2 - y^16)*((x-y)^2 - y^18)",
        "(x + y^10)*(x + y)",
    ),
    pair("ex8.2", "cusp with g = y", "x^3 - y^4", "y"),
    pair("ex8.2-b", "perturbed cusp, equivalent to ex8.2", "x^3 - y^4 - 3x y^5", "y"),
    pair("ex8.2-c", "perturbed cusp, equivalent to ex8.2", "x^3 - y^4 - 3x y^6", "y"),
    pair(
        "ex9.1",
        "f = x^2 - G^2, g = x - 2G with G = x^2 y - 2/3 x y^3 + y^5/5",
        "x^2 - (x^2 y - 2/3 x y^3 + y^5/5)^2",
        "x - 2(x^2 y - 2/3 x y^3 + y^5/5)",
    ),
    pair(
        "ex9.1-b",
        "the same with G(x^2, y)",
        "x^2 - (x^4 y - 2/3 x^2 y^3 + y^5/5)^2",
        "x - 2(x^4 y - 2/3 x^2 y^3 + y^5/5)",
    ),
    pair(
        "merle",
        "irreducible with two characteristic pairs, root y^(3/2) + y^(7/4)",
        "(x^2 - y^3)^2 - 4x y^5 - y^7",
        "y",
    ),
    pair(
        "fig2",
        "a non-collinear bar with two collinear points, a repair of four bars and two basic bars above it",
        "(x - y^2 - y^3)*(x + y^2 - y^3)*(x - y - y^2)*(x - 2y)*(x - 2y - y^2)*(x + y + y^2)",
        "(x - y^2 + y^3)*(x + y^2 + y^3)*(x - y + y^2)*(x - 2y + y^2)*(x + y)*(x + y - y^2)",
    ),
    Fixture {
        name: "mero",
        about: "Laurent pair, reduced with s = 2",
        f: "X^4 - Y^-2 X^2 + 1",
        g: "X^2 - Y^-1 X",
        laurent: true,
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}
