"""Published reference values used by the checks, tests and ``verify-paper``.

Product-group elements are digit strings ``g1 g2 ... gq`` with ``g1`` first.
Each comparison row is ``(gram_rank, code_weight, J_product, J_cyclic)``
where ``J`` lists SDO representatives including the identity and
``J_cyclic`` is ``None`` when no cyclic class has that rank and weight.
"""

from __future__ import annotations

# Z_3^2 against Z_9
ZPQ_3_2_ROWS = (
    (1, 1, ('00', '10', '11', '01', '12'), (0, 1, 3)),
    (3, 3, ('00', '10'), (0, 3)),
    (5, 3, ('00', '10', '11'), None),
    (7, 2, ('00', '10', '11', '01'), (0, 1)),
    (9, 1, ('00',), (0,)),
)

# Z_3^3 against Z_27; the nontrivial rows (the identity Gramian and the
# all-ones Gramian are omitted)
ZPQ_3_3_ROWS = (
    (3, 9, ('000', '001', '010', '011', '012'), (0, 3, 9)),
    (5, 9, ('000', '001', '010', '100', '101', '102', '110', '120'), None),
    (7, 6, ('000', '001', '011', '012', '100', '101', '102', '110', '111', '120', '121'), (0, 1, 9)),
    (7, 9, ('000', '001', '010', '012', '101', '110', '111'), None),
    (9, 3, ('000', '001'), (0, 9)),
    (9, 6, ('000', '010', '012', '102', '110', '111'), None),
    (9, 8, ('000', '001', '010', '100', '101', '102', '110', '111', '112', '120'), None),
    (11, 3, ('000', '001', '011', '012', '100', '101', '110', '111', '121'), None),
    (11, 6, ('000', '001', '010', '012', '101'), None),
    (11, 6, ('000', '001', '010', '012', '100', '102', '110', '112', '120'), None),
    (13, 3, ('000', '001', '010', '101', '102', '110', '112', '120'), None),
    (13, 4, ('000', '001', '010', '011', '012', '100', '101', '102', '110', '112', '120', '121'), None),
    (13, 6, ('000', '010', '012', '100'), None),
    (13, 6, ('000', '001', '010', '012', '100', '110', '112', '120'), None),
    (15, 3, ('000', '001', '010'), None),
    (15, 3, ('000', '001', '010', '100', '101', '111', '120'), None),
    (15, 4, ('000', '001', '010', '100', '102', '110', '120'), None),
    (15, 5, ('000', '001', '010', '011', '100', '101', '102', '110', '111', '120', '121'), None),
    (17, 3, ('000', '001', '010', '100', '101', '111'), None),
    (17, 3, ('000', '001', '011', '012', '100', '101', '102', '110', '111', '121'), None),
    (17, 4, ('000', '001', '010', '011', '012', '101'), None),
    (19, 2, ('000', '001', '010', '011', '012', '100', '101', '102', '110', '111', '112', '120', '121'), (0, 1, 3)),
    (19, 3, ('000', '001', '010', '100', '111'), None),
    (19, 3, ('000', '001', '010', '100', '101', '102', '110', '112', '120'), None),
    (21, 2, ('000', '001', '010', '012'), (0, 3)),
    (21, 3, ('000', '001', '010', '011', '100', '101', '111', '120'), None),
    (23, 2, ('000', '010', '012', '100', '102', '110', '111'), None),
    (25, 2, ('000', '001', '011', '012', '100', '101', '110', '111', '120', '121'), (0, 1)),
)

# Z_5^3 best performers per rank against Z_125:
# (gram_rank, product_weight, J_product, cyclic_weight, J_cyclic)
ZPQ_5_3_ROWS = (
    (5, 25, ('000', '001', '110', '111', '112', '113', '114'), 25, (0, 5, 25)),
    (21, 25, ('000', '001', '100', '101', '102', '103', '113', '114', '120', '121', '130'), 10, (0, 1, 25)),
    (25, 25, ('000', '010', '013', '101', '102', '113', '114', '120', '122', '132'), 5, (0, 25)),
    (101, 5, ('000', '001', '010', '104', '113', '121', '130'), 2, (0, 1, 5)),
    (105, 5, ('000', '010', '011', '012', '013', '014', '104', '110', '111', '112', '122', '123', '124', '131', '132', '133', '134', '140', '141', '142', '143', '144'), 2, (0, 5)),
    (121, 2, ('000', '010', '011', '012', '013', '014', '100', '101', '102', '103', '104', '120', '121', '122', '123', '124', '130', '131', '132', '133', '134', '140', '141', '142', '143', '144'), 2, (0, 1)),
)

# automorphic switching classes of Z_5^3 by number of SDO summands 1..32
Z5CUBE_CLASS_COUNTS = (1, 1, 1, 2, 3, 5, 12, 22, 42, 92, 174, 296, 476, 669, 832, 948,
                       948, 832, 669, 476, 296, 174, 92, 42, 22, 12, 5, 3, 2, 1, 1, 1)

CLASS_COUNTS = {"zpq:3,2": 5, "cyclic:9": 4, "zpq:3,3": 30, "cyclic:27": 8, "cyclic:125": 8}

Z17_DELTA_1 = (1, 2, 4, 8, 16, 15, 13, 9)
Z17_DELTA_3 = (3, 6, 12, 7, 14, 11, 5, 10)

Z7_IDEMPOTENT_ASYMMETRIC = (0, 1, 2, 4)

# seed whose orbit under the 9-cycle spans Z_2^9 without being Parseval
SHIFT_NON_PARSEVAL_SEED = "101111110"

# row e of the printed Z_3^2 Gramian
Z3SQ_GRAM_FIRST_ROW = "100101110"
Z3SQ_GRAM_RANK = 5


# the Z_6 Gramian R_0 + R_2 + R_4, row by row
Z6_GRAM = ("101010", "010101", "101010", "010101", "101010", "010101")

# printed values that disagree with a direct computation:
# (descriptor, gram_rank, printed_weight) -> computed weight. The all-ones
# Gramian of Z_3^2 has range {0, 1...1}, whose least nonzero weight is 9.
KNOWN_DISCREPANCIES = {("zpq:3,2", 1, 1): 9}


def parse_element(text: str) -> tuple[int, ...]:
    return tuple(int(c) for c in text)
