//! Polynomials transcribed from the published elimination, in the
//! variables `x, y, r`. Shared with the acceptance suite.

pub const R12: &str = "-(x^4+y^4 x^3-r y x^3-x^3+r y^3 x^2+r y x^2+x^2-r y x+y^2)";
pub const R_SOLVED: &str = "(x^4+x^3 y^4-x^3+x^2+y^2)/(x y (x^2-x y^2-x+1))";
pub const CONSTRAINT: &str = "x^2 y^4-x y^4+y^4+2 x^2 y^2-3 x y^2+2 y^2+x^2-x+1";
pub const S1: &str = "x^10 y^6+2 x^10 y^4+2 x^10 y^2+x^10-x^9 y^6-3 x^9 y^4-4 x^9 y^2-2 x^9+2 x^8 y^6+6 x^8 y^4-x^8 y^3+8 x^8 y^2+5 x^8+x^7 y^8-x^7 y^7+x^7 y^6+x^7 y^5-3 x^7 y^4+2 x^7 y^3-9 x^7 y^2-6 x^7+x^6 y^9-x^6 y^8+x^6 y^7-x^6 y^5+6 x^6 y^4-4 x^6 y^3+12 x^6 y^2+8 x^6+x^5 y^8-2 x^5 y^7+2 x^5 y^6+2 x^5 y^5-3 x^5 y^4+4 x^5 y^3-10 x^5 y^2-6 x^5+x^4 y^9-x^4 y^8+x^4 y^7+x^4 y^6-2 x^4 y^5+7 x^4 y^4-5 x^4 y^3+11 x^4 y^2+5 x^4+x^3 y^8+x^3 y^6+4 x^3 y^5-4 x^3 y^4+4 x^3 y^3-6 x^3 y^2-2 x^3-x^2 y^7+2 x^2 y^6-4 x^2 y^5+5 x^2 y^4-4 x^2 y^3+5 x^2 y^2+x^2+x y^7-x y^6+3 x y^5-2 x y^4+2 x y^3-x y^2+y^6-y^5+2 y^4-y^3+y^2";
pub const S2: &str = "(y+1)(x^6 y^4-x^6 y^3+2 x^6 y^2-x^6 y+x^6-x^5 y^4+x^5 y^3-2 x^5 y^2+x^5 y-x^5+2 x^4 y^4-2 x^4 y^3+4 x^4 y^2-3 x^4 y+3 x^4-x^3 y^4+2 x^3 y^3-3 x^3 y^2+2 x^3 y-2 x^3+2 x^2 y^4-2 x^2 y^3+4 x^2 y^2-3 x^2 y+3 x^2-x y^4+x y^3-2 x y^2+x y-x+y^4-y^3+2 y^2-y+1)";
pub const S3: &str = "-(x^4+x^3 y^4-x^3+x^2+y^2)(x^5 y^5+x^5 y^3-x^4 y^4-x^4 y^2+x^4 y-x^4+x^3 y^5+x^3 y^2-x^3 y+x^3-x^2 y^4+x^2 y^3-2 x^2 y^2+2 x^2 y-2 x^2+x y^4-x y^3+2 x y^2-x y+x-y^4+y^3-2 y^2+y-1)";
pub const S4: &str = "x^9 y^7+2 x^9 y^5+x^9 y^3-x^8 y^7-2 x^8 y^5+x^8 y+2 x^7 y^7+3 x^7 y^5-x^7 y^3-2 x^7 y-x^6 y^7+4 x^6 y^3+4 x^6 y+x^6+2 x^5 y^7+2 x^5 y^5+x^5 y^4-4 x^5 y^3-x^5 y^2-4 x^5 y-2 x^5-x^4 y^7-x^4 y^6+x^4 y^5-x^4 y^4+5 x^4 y^3+x^4 y^2+4 x^4 y+4 x^4+x^3 y^7+x^3 y^4-3 x^3 y^3-3 x^3 y^2-2 x^3 y-4 x^3+2 x^2 y^5+x^2 y^4+3 x^2 y^3+3 x^2 y^2+x^2 y+4 x^2-x y^5-x y^4-x y^3-3 x y^2-2 x+y^5+y^3+y^2+1";
