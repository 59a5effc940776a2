# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled float kernels: the extension twin of ``fussdeform._kernels_py``.

Function-for-function mirror of the pure module — same names, signatures,
grids, evaluation order, and stopping rules — with the hot paths lowered to C.
The backend selector imports whichever twin is available; the test suite
compares the two directly.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.math cimport M_PI, cos, fabs, pow, sin, sqrt

BACKEND = "compiled"

__all__ = [
    "BACKEND",
    "rho",
    "rho_prime",
    "w_phi",
    "f_phi",
    "psi",
    "psi_forms",
    "psi_min",
    "rho_bisect",
    "integrate_callable",
    "moment_quad",
    "cumulant_quad",
]


# -- trig parametrization of the spectral density ---------------------------


cdef inline double _rho(double p, double phi) nogil:
    return pow(sin(p * phi), p) / (sin(phi) * pow(sin((p - 1.0) * phi), p - 1.0))


cdef inline double _rho_prime(double p, double phi) nogil:
    cdef double factor = (
        p * p * cos(p * phi) / sin(p * phi)
        - cos(phi) / sin(phi)
        - (p - 1.0) * (p - 1.0) * cos((p - 1.0) * phi) / sin((p - 1.0) * phi)
    )
    return _rho(p, phi) * factor


cdef inline double _w_phi(double p, double r, double phi) nogil:
    return (
        pow(sin((p - 1.0) * phi), p - r - 1.0)
        * sin(phi)
        * sin(r * phi)
        / (M_PI * pow(sin(p * phi), p - r))
    )


cdef inline double _f_phi(double p, double t, double phi) nogil:
    cdef double s1 = sin((p - 1.0) * phi)
    return (
        pow(sin(phi), 2.0)
        * pow(s1, p - 3.0)
        * (t * s1 + 2.0 * (1.0 - t) * sin(p * phi) * cos(phi))
        / (M_PI * pow(sin(p * phi), p - 1.0))
    )


def rho(double p, double phi):
    """x-coordinate of the density parametrization (strictly decreasing in phi)."""
    return _rho(p, phi)


def rho_prime(double p, double phi):
    """Derivative of rho: rho * (p^2 cot(p phi) - cot(phi) - (p-1)^2 cot((p-1) phi))."""
    return _rho_prime(p, phi)


def w_phi(double p, double r, double phi):
    """Angle form of the component density W_{p,r} at x = rho(p, phi)."""
    return _w_phi(p, r, phi)


def f_phi(double p, double t, double phi):
    """Angle form of the mixed density t W_{p,1} + (1-t) W_{p,2} at x = rho(p, phi)."""
    return _f_phi(p, t, phi)


# -- the feasibility function on [0, pi] -------------------------------------


cdef inline double _psi(double p, double t, double phi) nogil:
    return t * sin((1.0 - 1.0 / p) * phi) + 2.0 * (1.0 - t) * sin(phi) * cos(phi / p)


def psi(double p, double t, double phi):
    """t sin((1 - 1/p) phi) + 2 (1 - t) sin(phi) cos(phi / p)."""
    return _psi(p, t, phi)


def psi_forms(double p, double t, double phi):
    """The three algebraically equal writings of psi (agreement is a float check)."""
    cdef double a = t * sin((1.0 - 1.0 / p) * phi) + 2.0 * (1.0 - t) * sin(phi) * cos(phi / p)
    cdef double b = (2.0 - t) * sin(phi) * cos(phi / p) - t * cos(phi) * sin(phi / p)
    cdef double c = (1.0 - t) * sin((1.0 + 1.0 / p) * phi) + sin((1.0 - 1.0 / p) * phi)
    return (a, b, c)


cdef double _INVPHI = (sqrt(5.0) - 1.0) / 2.0


cdef void _golden_psi(double p, double t, double a, double b, double tol,
                      double* xm_out, double* fm_out) nogil:
    cdef double x1 = b - _INVPHI * (b - a)
    cdef double x2 = a + _INVPHI * (b - a)
    cdef double f1 = _psi(p, t, x1)
    cdef double f2 = _psi(p, t, x2)
    cdef double xm
    while (b - a) > tol:
        if f1 <= f2:
            b = x2
            x2 = x1
            f2 = f1
            x1 = b - _INVPHI * (b - a)
            f1 = _psi(p, t, x1)
        else:
            a = x1
            x1 = x2
            f1 = f2
            x2 = a + _INVPHI * (b - a)
            f2 = _psi(p, t, x2)
    xm = 0.5 * (a + b)
    xm_out[0] = xm
    fm_out[0] = _psi(p, t, xm)


def psi_min(double p, double t, int grid=512, double tol=1e-12):
    """Global minimum of psi(p, t, .) over [0, pi]: grid scan plus golden refinement."""
    cdef double step = M_PI / grid
    cdef double* vals = <double*> PyMem_Malloc((grid + 1) * sizeof(double))
    cdef double best_val, best_phi, xm, fm
    cdef int i
    if vals == NULL:
        raise MemoryError
    try:
        for i in range(grid + 1):
            vals[i] = _psi(p, t, i * step)
        best_val = vals[0]
        best_phi = 0.0
        for i in range(1, grid + 1):
            if vals[i] < best_val:
                best_val = vals[i]
                best_phi = i * step
        for i in range(1, grid):
            if vals[i] <= vals[i - 1] and vals[i] <= vals[i + 1]:
                _golden_psi(p, t, (i - 1) * step, (i + 1) * step, tol, &xm, &fm)
                if fm < best_val:
                    best_val = fm
                    best_phi = xm
        if vals[0] <= vals[1]:
            _golden_psi(p, t, 0.0, step, tol, &xm, &fm)
            if fm < best_val:
                best_val = fm
                best_phi = xm
        if vals[grid] <= vals[grid - 1]:
            _golden_psi(p, t, M_PI - step, M_PI, tol, &xm, &fm)
            if fm < best_val:
                best_val = fm
                best_phi = xm
    finally:
        PyMem_Free(vals)
    return best_val, best_phi


def rho_bisect(double p, double x, double lo, double hi, double tol=1e-13):
    """Solve rho(p, phi) = x by bisection on a bracket with rho(lo) >= x >= rho(hi)."""
    cdef double mid
    while (hi - lo) > tol:
        mid = 0.5 * (lo + hi)
        if _rho(p, mid) >= x:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- Gauss-Kronrod 7/15 adaptive quadrature ----------------------------------

cdef double _XGK[7]
_XGK[0] = 0.991455371120812639206854697526329
_XGK[1] = 0.949107912342758524526189684047851
_XGK[2] = 0.864864423359769072789712788640926
_XGK[3] = 0.741531185599394439863864773280788
_XGK[4] = 0.586087235467691130294144838258730
_XGK[5] = 0.405845151377397166906606412076961
_XGK[6] = 0.207784955007898467600689403773245

cdef double _WGK[8]
_WGK[0] = 0.022935322010529224963732008058970
_WGK[1] = 0.063092092629978553290700663189204
_WGK[2] = 0.104790010322250183839876322541518
_WGK[3] = 0.140653259715525918745189590510238
_WGK[4] = 0.169004726639267902826583426598550
_WGK[5] = 0.190350578064785409913256402421014
_WGK[6] = 0.204432940075298892414161999234649
_WGK[7] = 0.209482141084727828012999174891714

cdef double _WG[4]
_WG[0] = 0.129484966168869693270611432679082
_WG[1] = 0.279705391489276667901467771423780
_WG[2] = 0.381830050505118944950369775488975
_WG[3] = 0.417959183673469387755102040816327

cdef double _EPS = 2.220446049250313e-16
cdef double _INSET = 1e-12
cdef int _MAX_PANELS = 4096


# integrand kinds for the C-level adaptive loop
cdef enum:
    KIND_MOMENT = 0
    KIND_P2 = 1
    KIND_P3 = 2
    KIND_A220910 = 3
    KIND_A022558 = 4


cdef inline double _integrand(int kind, double p, double t, double n_, double x) nogil:
    cdef double xx, rad
    if kind == KIND_MOMENT:
        return pow(_rho(p, x), n_) * _f_phi(p, t, x) * fabs(_rho_prime(p, x))
    elif kind == KIND_P2:
        rad = 4.0 * t * (t - 1.0) - pow(x - 2.0 * t + 1.0, 2.0)
        return (
            pow(x, n_)
            * (1.0 - t * x + x)
            * sqrt(rad)
            / (2.0 * M_PI * (t - 1.0) * x * x * x)
        )
    elif kind == KIND_P3:
        xx = x * x
        return (
            pow(xx, n_)
            * (t - xx * (t - 1.0) * (t - 1.0))
            * sqrt(4.0 * t - xx)
            / (M_PI * pow((t - 1.0) * xx + 1.0, 2.0))
        )
    elif kind == KIND_A220910:
        xx = x * x
        return pow(xx, n_) * pow(12.0 - xx, 1.5) / (M_PI * pow(xx + 4.0, 2.0))
    else:
        return pow(x, n_) * sqrt(x) * pow(8.0 - x, 1.5) / (2.0 * M_PI * pow(x + 1.0, 3.0))


cdef void _gk15_c(int kind, double p, double t, double n_, double a, double b,
                  double* val_out, double* err_out) nogil:
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc = _integrand(kind, p, t, n_, c)
    cdef double kron = _WGK[7] * fc
    cdef double gauss = _WG[3] * fc
    cdef double resabs = _WGK[7] * fabs(fc)
    cdef double dx, f1, f2, d, err, scaled, floor_
    cdef int j
    for j in range(7):
        dx = h * _XGK[j]
        f1 = _integrand(kind, p, t, n_, c - dx)
        f2 = _integrand(kind, p, t, n_, c + dx)
        kron += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (fabs(f1) + fabs(f2))
        if j & 1:
            gauss += _WG[(j - 1) // 2] * (f1 + f2)
    kron *= h
    gauss *= h
    resabs *= h
    d = fabs(kron - gauss)
    err = d
    if d != 0.0:
        scaled = pow(200.0 * d, 1.5)
        if scaled < err:
            err = scaled
    floor_ = 50.0 * _EPS * resabs
    if err < floor_:
        err = floor_
    val_out[0] = kron
    err_out[0] = err


cdef tuple _adaptive_c(int kind, double p, double t, double n_, double a, double b,
                       double atol, double rtol, int max_depth, int init_panels):
    cdef double* pa = <double*> PyMem_Malloc(_MAX_PANELS * sizeof(double))
    cdef double* pb = <double*> PyMem_Malloc(_MAX_PANELS * sizeof(double))
    cdef double* pv = <double*> PyMem_Malloc(_MAX_PANELS * sizeof(double))
    cdef double* pe = <double*> PyMem_Malloc(_MAX_PANELS * sizeof(double))
    cdef int* pd = <int*> PyMem_Malloc(_MAX_PANELS * sizeof(int))
    cdef double width, paa, pbb, v, e, total, err, worst_err, mid, v1, e1, v2, e2
    cdef int i, count, worst, depth, converged
    if pa == NULL or pb == NULL or pv == NULL or pe == NULL or pd == NULL:
        PyMem_Free(pa); PyMem_Free(pb); PyMem_Free(pv); PyMem_Free(pe); PyMem_Free(pd)
        raise MemoryError
    try:
        count = 0
        width = (b - a) / init_panels
        for i in range(init_panels):
            paa = a + i * width
            pbb = b if i == init_panels - 1 else a + (i + 1) * width
            _gk15_c(kind, p, t, n_, paa, pbb, &v, &e)
            pa[count] = paa
            pb[count] = pbb
            pv[count] = v
            pe[count] = e
            pd[count] = 0
            count += 1
        while True:
            total = 0.0
            err = 0.0
            for i in range(count):
                total += pv[i]
                err += pe[i]
            if err <= atol + rtol * fabs(total):
                converged = 1
                break
            worst = -1
            worst_err = -1.0
            for i in range(count):
                if pd[i] < max_depth and pe[i] > worst_err:
                    worst = i
                    worst_err = pe[i]
            if worst < 0 or count >= _MAX_PANELS:
                converged = 0
                break
            paa = pa[worst]
            pbb = pb[worst]
            depth = pd[worst]
            mid = 0.5 * (paa + pbb)
            _gk15_c(kind, p, t, n_, paa, mid, &v1, &e1)
            _gk15_c(kind, p, t, n_, mid, pbb, &v2, &e2)
            pa[worst] = paa
            pb[worst] = mid
            pv[worst] = v1
            pe[worst] = e1
            pd[worst] = depth + 1
            pa[count] = mid
            pb[count] = pbb
            pv[count] = v2
            pe[count] = e2
            pd[count] = depth + 1
            count += 1
    finally:
        PyMem_Free(pa); PyMem_Free(pb); PyMem_Free(pv); PyMem_Free(pe); PyMem_Free(pd)
    return total, err, converged != 0


def _gk15(f, double a, double b):
    """One 7-point Gauss / 15-point Kronrod panel of a Python callable."""
    cdef double c = 0.5 * (a + b)
    cdef double h = 0.5 * (b - a)
    cdef double fc = f(c)
    cdef double kron = _WGK[7] * fc
    cdef double gauss = _WG[3] * fc
    cdef double resabs = _WGK[7] * fabs(fc)
    cdef double dx, f1, f2, d, err, scaled, floor_
    cdef int j
    for j in range(7):
        dx = h * _XGK[j]
        f1 = f(c - dx)
        f2 = f(c + dx)
        kron += _WGK[j] * (f1 + f2)
        resabs += _WGK[j] * (fabs(f1) + fabs(f2))
        if j & 1:
            gauss += _WG[(j - 1) // 2] * (f1 + f2)
    kron *= h
    gauss *= h
    resabs *= h
    d = fabs(kron - gauss)
    err = d
    if d != 0.0:
        scaled = pow(200.0 * d, 1.5)
        if scaled < err:
            err = scaled
    floor_ = 50.0 * _EPS * resabs
    if err < floor_:
        err = floor_
    return kron, err, resabs


def integrate_callable(f, double a, double b, double atol=1e-10, double rtol=1e-12,
                       int max_depth=20, int init_panels=8):
    """Adaptive Gauss-Kronrod integral of a Python callable on [a, b]."""
    panels = []  # [a, b, value, err, depth]
    width = (b - a) / init_panels
    for i in range(init_panels):
        pa = a + i * width
        pb = b if i == init_panels - 1 else a + (i + 1) * width
        v, e, _ = _gk15(f, pa, pb)
        panels.append([pa, pb, v, e, 0])
    while True:
        total = 0.0
        err = 0.0
        for row in panels:
            total += row[2]
            err += row[3]
        if err <= atol + rtol * fabs(total):
            return total, err, True
        worst = -1
        worst_err = -1.0
        for i, row in enumerate(panels):
            if row[4] < max_depth and row[3] > worst_err:
                worst = i
                worst_err = row[3]
        if worst < 0 or len(panels) >= _MAX_PANELS:
            return total, err, False
        pa, pb, _, _, depth = panels[worst]
        mid = 0.5 * (pa + pb)
        v1, e1, _ = _gk15(f, pa, mid)
        v2, e2, _ = _gk15(f, mid, pb)
        panels[worst] = [pa, mid, v1, e1, depth + 1]
        panels.append([mid, pb, v2, e2, depth + 1])


def moment_quad(double p, double t, int n, double atol=1e-10, double rtol=1e-12,
                int max_depth=20):
    """n-th moment of the density of the (p, t) family, integrated in angle space."""
    return _adaptive_c(KIND_MOMENT, p, t, <double> n, _INSET, M_PI / p - _INSET,
                       atol, rtol, max_depth, 8)


def cumulant_quad(case, double t, int n, double atol=1e-10, double rtol=1e-12,
                  int max_depth=20):
    """Moment integrals of the cumulant-side measures; see the pure twin for formulas."""
    cdef double half, lo, hi
    if case == "p2":
        half = 2.0 * sqrt(t * t - t)
        lo = 2.0 * t - 1.0 - half
        hi = 2.0 * t - 1.0 + half
        return _adaptive_c(KIND_P2, 0.0, t, <double> n, lo + _INSET, hi - _INSET,
                           atol, rtol, max_depth, 8)
    if case == "p3":
        return _adaptive_c(KIND_P3, 0.0, t, <double> n, 0.0, 2.0 * sqrt(t) - _INSET,
                           atol, rtol, max_depth, 8)
    if case == "a220910":
        return _adaptive_c(KIND_A220910, 0.0, t, <double> n, 0.0, 2.0 * sqrt(3.0) - _INSET,
                           atol, rtol, max_depth, 8)
    if case == "a022558":
        return _adaptive_c(KIND_A022558, 0.0, t, <double> n, _INSET, 8.0 - _INSET,
                           atol, rtol, max_depth, 8)
    raise ValueError(f"unknown cumulant measure case {case!r}")
