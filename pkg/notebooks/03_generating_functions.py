"""Closed-form generating functions checked against computed multiplicity tables."""
from poisson_inv.series import CLOSED_FORMS, build_table, expand, verify_table

table = build_table("inv", 1, [(n, m) for n in range(1, 6) for m in range(0, 6)])

for sid, info in CLOSED_FORMS.items():
    if info.group == "kw" or not info.applies(1):
        continue
    rep = verify_table(info.series, table, info.lam, (5, 5), group=info.group, series_id=sid)
    print(f"{sid:12} {str(info.series):60} {rep['status']} ({rep['checked']} points)")

# the first few coefficients of one series, as s^m t^n
coeffs = expand(CLOSED_FORMS["I+-11"].series, 8, 4)
print(sorted(coeffs.items()))
