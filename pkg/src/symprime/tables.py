"""Published actual/estimated values for the three extreme families."""

from .families import Family

TABLE_XS = (10**3, 10**4, 10**5, 10**6, 10**7, 10**8)

# x -> (actual, estimated)
PUBLISHED_TABLES: dict[int, tuple[Family, dict[int, tuple[int, int]]]] = {
    1: (
        Family.EXTREME_HALF,
        dict(zip(TABLE_XS, [(1, 8), (15, 27), (111, 122), (623, 659), (3990, 3988), (26179, 26041)])),
    ),
    2: (
        Family.EXTREME_THIRD,
        dict(zip(TABLE_XS, [(9, 11), (26, 37), (142, 165), (864, 887), (5326, 5359), (34863, 34957)])),
    ),
    3: (
        Family.EXTREME_QUADRUPLE,
        dict(zip(TABLE_XS, [(1, 1), (2, 3), (9, 12), (43, 51), (249, 258), (1465, 1452)])),
    ),
}

PUBLISHED_CONSTANTS = {
    "c3": 0.635166354604222,
    "c4": 0.3074948895,
}
