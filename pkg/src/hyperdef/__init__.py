"""Exact computational algebra for higher reduced enveloping algebras of SL2.

Modules:
    gf      -- arithmetic in F_p and F_{p^k}, characteristic-p binomials
    linalg  -- dense exact linear algebra and module machinery (spin, chop,
               Hom spaces, irreducibility certificates)
    dist    -- distribution-algebra oracle computed from functionals on the
               truncated coordinate ring of SL2
    hyper   -- Di(G_r), U^[r]_chi(SL2), U_chi(sl2), Upsilon, centers
    repthy  -- simples, baby/teenage Verma modules, Steinberg decomposition
    verify  -- named theorem checks over (p, r, chi) grids
    cli     -- the hyperdef command-line tool
"""

__version__ = "0.1.0"
