"""Hand-copied 4x4 matrices for the two-dimensional algebra k[x]/(x^2 - sigma).

Entries follow the basis 1(x)1, 1(x)x, x(x)1, x(x)x.  In the coloured case 1
matrices, entries B[2][2] and C[2][2] carry a stray closing parenthesis in
the source text; it is dropped here.  Case 2 uses ell, m for the two extra
scalars.
"""

CONSTANT = {
    "A": [["lambda", "0", "0", "sigma*(lambda+1)"],
          ["0", "lambda", "lambda-1", "0"],
          ["0", "0", "1", "0"],
          ["0", "0", "0", "-1"]],
    "B": [["1", "0", "0", "2*sigma"],
          ["0", "1", "0", "0"],
          ["0", "0", "1", "0"],
          ["0", "0", "0", "-1"]],
    "D": [["lambda'", "0", "0", "sigma*(lambda'+1)"],
          ["0", "lambda'", "lambda'-1", "0"],
          ["0", "0", "1", "0"],
          ["0", "0", "0", "-1"]],
}
CONSTANT["C"] = CONSTANT["B"]

COLOURED_CASE1 = {
    "A": [["q*u-p*v", "0", "0", "sigma*(q+p)*(u-v)"],
          ["0", "p*(u-v)", "(q-p)*v", "0"],
          ["0", "(q-p)*u", "q*(u-v)", "0"],
          ["0", "0", "0", "q*v-p*u"]],
    "B": [["q'*u-q*v", "0", "0", "sigma*((p'+q')*u-(p+q)*v)"],
          ["0", "p'*u-q*v", "(p-q)*v", "0"],
          ["0", "(q'-p')*u", "q'*u-p*v", "0"],
          ["0", "0", "0", "p*v-p'*u"]],
    "C": [["q*u-q'*v", "0", "0", "sigma*((p+q)*u-(p'+q')*v)"],
          ["0", "p*u-q'*v", "(p'-q')*v", "0"],
          ["0", "(q-p)*u", "q*u-p'*v", "0"],
          ["0", "0", "0", "p'*v-p*u"]],
    "D": [["q'*u-p'*v", "0", "0", "sigma*(q'+p')*(u-v)"],
          ["0", "p'*(u-v)", "(q'-p')*v", "0"],
          ["0", "(q'-p')*u", "q'*(u-v)", "0"],
          ["0", "0", "0", "q'*v-p'*u"]],
}

COLOURED_CASE2 = {
    "A": COLOURED_CASE1["A"],
    "B": [["p*m*u-q*ell*v", "0", "0", "sigma*(p+q)*(m*u-ell*v)"],
          ["0", "q*(m*u-ell*v)", "(p-q)*ell*v", "0"],
          ["0", "(p-q)*m*u", "p*(m*u-ell*v)", "0"],
          ["0", "0", "0", "p*ell*v-q*m*u"]],
    "C": [["q*ell*u-p*m*v", "0", "0", "sigma*(p+q)*(ell*u-m*v)"],
          ["0", "p*(ell*u-m*v)", "(q-p)*m*v", "0"],
          ["0", "(q-p)*ell*u", "q*(ell*u-m*v)", "0"],
          ["0", "0", "0", "q*m*v-p*ell*u"]],
    "D": [["p*u-q*v", "0", "0", "sigma*(q+p)*(u-v)"],
          ["0", "q*(u-v)", "(p-q)*v", "0"],
          ["0", "(p-q)*u", "p*(u-v)", "0"],
          ["0", "0", "0", "p*v-q*u"]],
}

# entries where the copied text needed the parenthesis fix: (case, operator, row, col)
CORRECTED = {(1, "B", 2, 2), (1, "C", 2, 2)}
