# 0 is always the "safe" outcome: valid, identifiable, unconfoundable, conjugate.
OK = 0
FLAGGED = 1
ERROR = 2
UNKNOWN = 3

IDENTIFIABILITY = {True: OK, False: FLAGGED}
CONFOUNDABILITY = {False: OK, True: FLAGGED}
CONJUGACY = {
    'conjugate': OK,
    'structurally-impossible': FLAGGED,
    'unknown': UNKNOWN,
}
