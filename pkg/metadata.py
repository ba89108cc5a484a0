__title__ = "rxnident"
__description__ = """
    rxnident decides reaction-identifiability, confoundability and linear conjugacy of mass-action
    reaction networks with respect to their chemical Langevin equations (and, for comparison, their ODEs).
    Every verdict ships an exact rate-constant witness or an infeasibility certificate.
"""
__version__ = "0.1.0"
__license__ = "License: MIT"
__copyrights__ = "Copyright (c) 2026 rxnident developers"
__vendor__ = "rxnident/rxnident"
