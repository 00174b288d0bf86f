//! Construction, nilpotency verification and inversion of polynomial maps
//! `H = (u(x,y), u2(x,y,x3), ..., u_{n-1}(x,y,x_n), u_n(x,y))` whose Jacobian
//! matrix is nilpotent, with all arithmetic exact over the rationals.

pub mod polyring;
pub mod jacobian;
pub mod family;
pub mod inverter;
