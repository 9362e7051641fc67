"""
已發表的擬合參數族

每個族記錄自由參數名稱 (Gram 元素 gi,j 或鬆弛係數)、對應的熵種類與階數,
以及宣稱正定的 α 區間,讓驗證器不必重新求解 SDP 即可重播。
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Tuple

from ..models import AlphaPoly, EntropyKind, FittedParams


def _scaled(denominator: int, *numerators: int) -> AlphaPoly:
    return AlphaPoly(tuple(Fraction(n, denominator) for n in numerators))


def _decimal(*values: str) -> AlphaPoly:
    return AlphaPoly(tuple(Fraction(v) for v in values))


@dataclass(frozen=True)
class KnownCertificate:
    """一組可重播的擬合參數"""

    name: str
    kind: EntropyKind
    order: int
    params: Tuple[Tuple[str, AlphaPoly], ...]
    interval: Tuple[Fraction, Fraction]
    fit_degree: int
    round_denominator: int
    description: str = ""

    def fitted(self) -> FittedParams:
        return FittedParams(dict(self.params), self.fit_degree, self.round_denominator)


# k=3 Rényi,(0.5, 0.84):a = g2,4,b = g1,3,c = g2,3
_RENYI3_HAT = KnownCertificate(
    name="renyi3-hat",
    kind=EntropyKind.RENYI,
    order=3,
    params=(
        ("g1,3", _decimal("9.4", "-24.9", "49.1", "-48.6", "17.7")),
        ("g2,3", _decimal("-25.7", "114.6", "-262.6", "262.2", "-94.2")),
        ("g2,4", _decimal("0.3", "6.4", "-8.7", "1.1", "0.8")),
        ("d", _decimal("0", "-0.2", "0.6", "-0.4")),
        ("e", _decimal("0.5", "-2.3", "5.6", "-3.7")),
    ),
    interval=(Fraction(1, 2), Fraction(84, 100)),
    fit_degree=4,
    round_denominator=10,
    description="第三階 Rényi,四次擬合曲線",
)

_RENYI3_TILDE = KnownCertificate(
    name="renyi3-tilde",
    kind=EntropyKind.RENYI,
    order=3,
    params=(
        ("g1,3", _decimal("6", "-3.5")),
        ("g2,3", _decimal("-12", "7")),
        ("g2,4", _decimal("4", "-4")),
        ("d", AlphaPoly.zero()),
        ("e", _decimal("1.5", "-1.5")),
    ),
    interval=(Fraction(83, 100), Fraction(1)),
    fit_degree=1,
    round_denominator=10,
    description="第三階 Rényi,α 接近 1 的線性族;α=1 時第四列為零",
)

_TSALLIS4_NAMES = ("g1,3", "g1,4", "g1,5", "g2,3", "g2,4", "g2,5", "g3,5", "g4,5")

_TSALLIS4_HAT = KnownCertificate(
    name="tsallis4-hat",
    kind=EntropyKind.TSALLIS,
    order=4,
    params=tuple(
        zip(
            _TSALLIS4_NAMES,
            (
                _scaled(10000, -43159, 2316, 9631),
                _scaled(10000, 389887, -350246, 77641),
                _scaled(10000, -105282, 101670, -24505),
                _scaled(10000, 281922, -283833, 71413),
                _scaled(10000, -643827, 644561, -161257),
                _scaled(10000, 129980, -134523, 34731),
                _scaled(10000, 39405, -30388, 5338),
                _scaled(10000, -63338, 10256, 10729),
            ),
        )
    ),
    interval=(Fraction(165, 100), Fraction(198, 100)),
    fit_degree=2,
    round_denominator=10000,
    description="第四階 Tsallis,二次擬合 (含 α=2 的固定點)",
)

_TSALLIS4_TILDE = KnownCertificate(
    name="tsallis4-tilde",
    kind=EntropyKind.TSALLIS,
    order=4,
    params=tuple(
        zip(
            _TSALLIS4_NAMES,
            (
                _scaled(10000, -84326, 42163),
                _scaled(10000, 73334, -36667),
                _scaled(10000, -6310, 3155),
                _scaled(10000, -15398, 7699),
                _scaled(10000, 18382, -9191),
                _scaled(10000, -12388, 6194),
                _scaled(10000, 20748, -10374),
                _scaled(10000, -113586, 56793),
            ),
        )
    ),
    interval=(Fraction(197, 100), Fraction(2)),
    fit_degree=1,
    round_denominator=10000,
    description="第四階 Tsallis,α 接近 2 的線性族;α=2 時只剩 (1,1) 元素",
)

_RENYI4_ROWS: Tuple[Tuple[str, Tuple[int, ...]], ...] = (
    ("g1,3", (-91252, 35904, 35890, -19791, -9164, 10537, -2361)),
    ("g1,4", (189476, 23039, -175141, 41344, 44217, -27814, 5007)),
    ("g1,5", (-180930, 305354, -217895, 36990, 58957, -39666, 7379)),
    ("g1,6", (250345, -840213, 1015652, -308670, -284395, 229172, -46186)),
    ("g1,8", (-3101, 132016, -326706, 134523, 93089, -87288, 18566)),
    ("g1,9", (-905294, 3493036, -4491592, 1464337, 1256145, -1066012, 224800)),
    ("g1,10", (-167116, 229222, 162008, -239860, -53641, 132827, -38420)),
    ("g2,3", (105908, 97501, -265476, 87805, 72522, -58267, 11928)),
    ("g2,4", (-346450, 119563, 121389, -5240, -27137, -2197, 2547)),
    ("g2,5", (473201, -1035341, 872198, -167048, -235129, 159936, -29918)),
    ("g2,6", (-218012, 774319, -1053192, 383600, 300441, -268841, 56616)),
    ("g2,7", (587831, -1997272, 2510957, -863328, -699623, 631534, -137285)),
    ("g2,8", (-157085, 154690, 317156, -243313, -104416, 128911, -29406)),
    ("g2,9", (1225754, -5024686, 6827844, -2392199, -1919021, 1705479, -364792)),
    ("g2,10", (531222, -1137657, 411707, 283843, -85384, -101700, 39106)),
    ("g3,5", (164610, -232680, 71531, 35584, -14442, -5843, 2282)),
    ("g3,6", (-72349, 183502, -209314, 69998, 58837, -51981, 11058)),
    ("g3,8", (-65485, 191390, -102360, -16302, 21592, -4711, 334)),
    ("g3,9", (-237774, 646429, -500069, 42196, 118614, -73719, 17191)),
    ("g3,10", (130292, -402176, 344316, -35571, -88379, 46327, -7687)),
    ("g4,5", (-555060, 1103729, -782340, 63500, 203177, -104028, 16589)),
    ("g4,6", (256607, -750153, 903638, -303021, -253643, 222514, -47270)),
    ("g4,8", (-47232, 359306, -852339, 410441, 259946, -252015, 52435)),
    ("g4,9", (-776042, 3211664, -4564779, 1705665, 1309323, -1178244, 246089)),
    ("g4,10", (146608, -674489, 1225886, -591053, -358918, 386564, -87940)),
    ("g5,6", (-212195, 621958, -650747, 160209, 177993, -130945, 25633)),
    ("g5,7", (1636258, -4762460, 4731637, -1069804, -1286924, 910874, -172598)),
    ("g5,8", (373592, -1191822, 1381783, -404760, -386732, 304993, -60278)),
    ("g5,9", (849263, -2834446, 3316064, -996486, -926530, 748482, -150180)),
    ("g6,7", (247305, -846256, 853751, -149831, -228476, 137913, -23938)),
    ("g6,9", (-490805, 1729089, -2070698, 656732, 569796, -495499, 107130)),
    ("g6,10", (-34696, -24941, 265660, -197466, -82675, 117867, -29069)),
    ("g7,7", (1963506, -8820363, 12481179, -4438798, -3447795, 3192710, -717188)),
    ("g7,8", (-798409, 2258254, -1983151, 283227, 533372, -294422, 41938)),
    ("g7,9", (3003706, -11639204, 14866060, -4806471, -4067396, 3590054, -793636)),
    ("g7,10", (2167103, -5896234, 5186510, -1007159, -1383214, 957062, -178679)),
    ("g8,9", (1520755, -5407036, 6563579, -2113353, -1818437, 1576022, -336478)),
    ("g9,9", (7741109, -28812524, 35525537, -11166017, -9616108, 8519970, -1922915)),
    ("c1", (8489, -61368, 103126, -43353, -28584, 29984, -7198)),
    ("c2", (33383, -160476, 232596, -88736, -63744, 63678, -15070)),
    ("c3", (-217390, 740690, -859895, 251505, 238219, -191600, 39123)),
    ("c4", (-194197, 567924, -575575, 141205, 159513, -114845, 20978)),
)

_RENYI4_HAT = KnownCertificate(
    name="renyi4-hat",
    kind=EntropyKind.RENYI,
    order=4,
    params=tuple((name, _scaled(10000, *numerators)) for name, numerators in _RENYI4_ROWS),
    interval=(Fraction(93, 100), Fraction(176, 100)),
    fit_degree=6,
    round_denominator=10000,
    description="第四階 Rényi,十維基底的六次擬合 (42 個自由參數)",
)

KNOWN_CERTIFICATES: Dict[str, KnownCertificate] = {
    c.name: c for c in (_RENYI3_HAT, _RENYI3_TILDE, _TSALLIS4_HAT, _TSALLIS4_TILDE, _RENYI4_HAT)
}


def known_certificate(name: str) -> KnownCertificate:
    """
    依名稱取得已知參數族

    Raises:
        KeyError: 名稱不存在
    """
    try:
        return KNOWN_CERTIFICATES[name]
    except KeyError as e:
        raise KeyError(f"未知的參數族: {name} (可用: {', '.join(KNOWN_CERTIFICATES)})") from e


def known_names() -> List[str]:
    return list(KNOWN_CERTIFICATES)
