"""Division by 1 - zeta on superelliptic curves y^n = (x + a_1)...(x + a_d) over finite fields."""

__version__ = "0.1.0"
