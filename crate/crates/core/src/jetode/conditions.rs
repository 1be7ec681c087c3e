//! Wünschmann conditions for orders 3 to 7, keyed in twice. The flat tables
//! list `(coefficient, factors)` with factors `Fk`, `DFk`, `D2Fk`, `Fy` and an
//! optional `^p`; the grouped strings collect the same terms by powers of the
//! highest partial `F_{n-1}`.

pub(crate) type FlatCondition = &'static [(i64, &'static str)];

pub(crate) const FLAT_3: &[FlatCondition] = &[&[
    (9, "D2F2"),
    (-27, "DF1"),
    (-18, "DF2 F2"),
    (18, "F1 F2"),
    (4, "F2^3"),
    (54, "Fy"),
]];

pub(crate) const FLAT_4: &[FlatCondition] = &[
    &[(4, "D2F3"), (-8, "DF2"), (8, "F1"), (-6, "DF3 F3"), (4, "F2 F3"), (1, "F3^3")],
    &[
        (160, "D2F2"),
        (-640, "DF1"),
        (144, "DF3^2"),
        (-352, "DF3 F2"),
        (144, "F2^2"),
        (-80, "DF2 F3"),
        (160, "F1 F3"),
        (-72, "DF3 F3^2"),
        (88, "F2 F3^2"),
        (9, "F3^4"),
        (1600, "Fy"),
    ],
];

pub(crate) const FLAT_5: &[FlatCondition] = &[
    &[(50, "D2F4"), (-75, "DF3"), (50, "F2"), (-60, "F4 DF4"), (30, "F3 F4"), (8, "F4^3")],
    &[
        (375, "D2F3"),
        (-1000, "DF2"),
        (350, "DF4^2"),
        (1250, "F1"),
        (-650, "F3 DF4"),
        (200, "F3^2"),
        (-150, "F4 DF3"),
        (200, "F2 F4"),
        (-140, "F4^2 DF4"),
        (130, "F3 F4^2"),
        (14, "F4^4"),
    ],
    &[
        (1250, "D2F2"),
        (-6250, "DF1"),
        (1750, "DF3 DF4"),
        (-2750, "F2 DF4"),
        (-875, "F3 DF3"),
        (1250, "F2 F3"),
        (-500, "F4 DF2"),
        (700, "DF4^2 F4"),
        (1250, "F1 F4"),
        (-1050, "F3 F4 DF4"),
        (350, "F3^2 F4"),
        (-350, "F4^2 DF3"),
        (550, "F2 F4^2"),
        (-280, "F4^3 DF4"),
        (210, "F3 F4^3"),
        (28, "F4^5"),
        (18750, "Fy"),
    ],
];

pub(crate) const FLAT_6: &[FlatCondition] = &[
    &[(45, "D2F5"), (-54, "DF4"), (27, "F3"), (-45, "DF5 F5"), (18, "F4 F5"), (5, "F5^3")],
    &[
        (945, "D2F4"),
        (-1890, "DF3"),
        (900, "DF5^2"),
        (1575, "F2"),
        (-1350, "DF5 F4"),
        (333, "F4^2"),
        (-315, "DF4 F5"),
        (315, "F3 F5"),
        (-300, "DF5 F5^2"),
        (225, "F4 F5^2"),
        (25, "F5^4"),
    ],
    &[
        (2835, "D2F3"),
        (-9450, "DF2"),
        (4320, "DF4 DF5"),
        (14175, "F1"),
        (-5130, "DF5 F3"),
        (-1728, "DF4 F4"),
        (1863, "F3 F4"),
        (-945, "DF3 F5"),
        (1800, "DF5^2 F5"),
        (1575, "F2 F5"),
        (-2160, "DF5 F4 F5"),
        (576, "F4^2 F5"),
        (-720, "DF4 F5^2"),
        (855, "F3 F5^2"),
        (-600, "DF5 F5^3"),
        (360, "F4 F5^3"),
        (50, "F5^5"),
    ],
    &[
        (14175, "D2F2"),
        (-85050, "DF1"),
        (6480, "DF4^2"),
        (16200, "DF3 DF5"),
        (-31050, "DF5 F2"),
        (-9720, "DF4 F3"),
        (3645, "F3^2"),
        (-6480, "DF3 F4"),
        (5400, "DF5^2 F4"),
        (11475, "F2 F4"),
        (-4320, "DF5 F4^2"),
        (864, "F4^3"),
        (-4725, "DF2 F5"),
        (10800, "DF4 DF5 F5"),
        (14175, "F1 F5"),
        (-10800, "DF5 F3 F5"),
        (-6480, "DF4 F4 F5"),
        (5940, "F3 F4 F5"),
        (-2700, "DF3 F5^2"),
        (4500, "DF5^2 F5^2"),
        (5175, "F2 F5^2"),
        (-7200, "DF5 F4 F5^2"),
        (2340, "F4^2 F5^2"),
        (-1800, "DF4 F5^3"),
        (1800, "F3 F5^3"),
        (-1500, "DF5 F5^4"),
        (1050, "F4 F5^4"),
        (125, "F5^6"),
        (297675, "Fy"),
    ],
];

pub(crate) const FLAT_7: &[FlatCondition] = &[
    &[(245, "D2F6"), (-245, "DF5"), (98, "F4"), (-210, "DF6 F6"), (70, "F5 F6"), (20, "F6^3")],
    &[
        (6860, "D2F5"),
        (-10976, "DF4"),
        (6615, "DF6^2"),
        (6860, "F3"),
        (-8330, "DF6 F5"),
        (1715, "F5^2"),
        (-1960, "DF5 F6"),
        (1568, "F4 F6"),
        (-1890, "DF6 F6^2"),
        (1190, "F5 F6^2"),
        (135, "F6^4"),
    ],
    &[
        (9604, "D2F4"),
        (-24010, "DF3"),
        (15435, "DF5 DF6"),
        (24010, "F2"),
        (-14749, "DF6 F4"),
        (-5145, "DF5 F5"),
        (4459, "F4 F5"),
        (-2744, "DF4 F6"),
        (6615, "DF6^2 F6"),
        (3430, "F3 F6"),
        (-6615, "DF6 F5 F6"),
        (1470, "F5^2 F6"),
        (-2205, "DF5 F6^2"),
        (2107, "F4 F6^2"),
        (-1890, "DF6 F6^3"),
        (945, "F5 F6^3"),
        (135, "F6^5"),
    ],
    &[
        (336140, "D2F3"),
        (-1344560, "DF2"),
        (180075, "DF5^2"),
        (432180, "DF4 DF6"),
        (2352980, "F1"),
        (-624260, "DF6 F3"),
        (-216090, "DF5 F4"),
        (64827, "F4^2"),
        (-144060, "DF4 F5"),
        (154350, "DF6^2 F5"),
        (192080, "F3 F5"),
        (-102900, "DF6 F5^2"),
        (17150, "F5^3"),
        (-96040, "DF3 F6"),
        (308700, "DF5 DF6 F6"),
        (192080, "F2 F6"),
        (-246960, "DF6 F4 F6"),
        (-154350, "DF5 F5 F6"),
        (113190, "F4 F5 F6"),
        (-61740, "DF4 F6^2"),
        (132300, "DF6^2 F6^2"),
        (89180, "F3 F6^2"),
        (-176400, "DF6 F5 F6^2"),
        (47775, "F5^2 F6^2"),
        (-44100, "DF5 F6^3"),
        (35280, "F4 F6^3"),
        (-37800, "DF6 F6^4"),
        (22050, "F5 F6^4"),
        (2700, "F6^6"),
    ],
    &[
        (2352980, "D2F2"),
        (-16470860, "DF1"),
        (1512630, "DF4 DF5"),
        (2268945, "DF3 DF6"),
        (-5126135, "DF6 F2"),
        (-1512630, "DF5 F3"),
        (-907578, "DF4 F4"),
        (648270, "DF6^2 F4"),
        (907578, "F3 F4"),
        (-756315, "DF3 F5"),
        (1080450, "DF5 DF6 F5"),
        (1596665, "F2 F5"),
        (-1080450, "DF6 F4 F5"),
        (-360150, "DF5 F5^2"),
        (288120, "F4 F5^2"),
        (-672280, "DF2 F6"),
        (540225, "DF5^2 F6"),
        (1296540, "DF4 DF6 F6"),
        (2352980, "F1 F6"),
        (-1620675, "DF6 F3 F6"),
        (-864360, "DF5 F4 F6"),
        (324135, "F4^2 F6"),
        (-648270, "DF4 F5 F6"),
        (926100, "DF6^2 F5 F6"),
        (756315, "F3 F5 F6"),
        (-771750, "DF6 F5^2 F6"),
        (154350, "F5^3 F6"),
        (-324135, "DF3 F6^2"),
        (926100, "DF5 DF6 F6^2"),
        (732305, "F2 F6^2"),
        (-926100, "DF6 F4 F6^2"),
        (-617400, "DF5 F5 F6^2"),
        (524790, "F4 F5 F6^2"),
        (-185220, "DF4 F6^3"),
        (396900, "DF6^2 F6^3"),
        (231525, "F3 F6^3"),
        (-661500, "DF6 F5 F6^3"),
        (209475, "F5^2 F6^3"),
        (-132300, "DF5 F6^4"),
        (119070, "F4 F6^4"),
        (-113400, "DF6 F6^5"),
        (75600, "F5 F6^5"),
        (8100, "F6^7"),
        (65883440, "Fy"),
    ],
];

pub(crate) const GROUPED_3: &[&str] = &["9*D2F2 - 27*DF1 + 54*Fy + F2*(-18*DF2 + 18*F1 + 4*F2^2)"];

pub(crate) const GROUPED_4: &[&str] = &[
    "4*D2F3 - 8*DF2 + 8*F1 + F3*(-6*DF3 + 4*F2 + F3^2)",
    "160*D2F2 - 640*DF1 + 144*DF3^2 - 352*DF3*F2 + 144*F2^2 + 1600*Fy \
     + F3*(-80*DF2 + 160*F1 + F3*(-72*DF3 + 88*F2 + 9*F3^2))",
];

pub(crate) const GROUPED_5: &[&str] = &[
    "50*D2F4 - 75*DF3 + 50*F2 + F4*(-60*DF4 + 30*F3 + 8*F4^2)",
    "375*D2F3 - 1000*DF2 + 350*DF4^2 + 1250*F1 - 650*F3*DF4 + 200*F3^2 \
     + F4*(-150*DF3 + 200*F2 + F4*(-140*DF4 + 130*F3 + 14*F4^2))",
    "1250*D2F2 - 6250*DF1 + 1750*DF3*DF4 - 2750*F2*DF4 - 875*F3*DF3 + 1250*F2*F3 + 18750*Fy \
     + F4*(-500*DF2 + 700*DF4^2 + 1250*F1 - 1050*F3*DF4 + 350*F3^2 \
     + F4*(-350*DF3 + 550*F2 + F4*(-280*DF4 + 210*F3 + 28*F4^2)))",
];

pub(crate) const GROUPED_6: &[&str] = &[
    "45*D2F5 - 54*DF4 + 27*F3 + F5*(-45*DF5 + 18*F4 + 5*F5^2)",
    "945*D2F4 - 1890*DF3 + 900*DF5^2 + 1575*F2 - 1350*DF5*F4 + 333*F4^2 \
     + F5*(-315*DF4 + 315*F3 + F5*(-300*DF5 + 225*F4 + 25*F5^2))",
    "2835*D2F3 - 9450*DF2 + 4320*DF4*DF5 + 14175*F1 - 5130*DF5*F3 - 1728*DF4*F4 + 1863*F3*F4 \
     + F5*(-945*DF3 + 1800*DF5^2 + 1575*F2 - 2160*DF5*F4 + 576*F4^2 \
     + F5*(-720*DF4 + 855*F3 + F5*(-600*DF5 + 360*F4 + 50*F5^2)))",
    "14175*D2F2 - 85050*DF1 + 6480*DF4^2 + 16200*DF3*DF5 - 31050*DF5*F2 - 9720*DF4*F3 + 3645*F3^2 \
     - 6480*DF3*F4 + 5400*DF5^2*F4 + 11475*F2*F4 - 4320*DF5*F4^2 + 864*F4^3 + 297675*Fy \
     + F5*(-4725*DF2 + 10800*DF4*DF5 + 14175*F1 - 10800*DF5*F3 - 6480*DF4*F4 + 5940*F3*F4 \
     + F5*(-2700*DF3 + 4500*DF5^2 + 5175*F2 - 7200*DF5*F4 + 2340*F4^2 \
     + F5*(-1800*DF4 + 1800*F3 + F5*(-1500*DF5 + 1050*F4 + 125*F5^2))))",
];

pub(crate) const GROUPED_7: &[&str] = &[
    "245*D2F6 - 245*DF5 + 98*F4 + F6*(-210*DF6 + 70*F5 + 20*F6^2)",
    "6860*D2F5 - 10976*DF4 + 6615*DF6^2 + 6860*F3 - 8330*DF6*F5 + 1715*F5^2 \
     + F6*(-1960*DF5 + 1568*F4 + F6*(-1890*DF6 + 1190*F5 + 135*F6^2))",
    "9604*D2F4 - 24010*DF3 + 15435*DF5*DF6 + 24010*F2 - 14749*DF6*F4 - 5145*DF5*F5 + 4459*F4*F5 \
     + F6*(-2744*DF4 + 6615*DF6^2 + 3430*F3 - 6615*DF6*F5 + 1470*F5^2 \
     + F6*(-2205*DF5 + 2107*F4 + F6*(-1890*DF6 + 945*F5 + 135*F6^2)))",
    "336140*D2F3 - 1344560*DF2 + 180075*DF5^2 + 432180*DF4*DF6 + 2352980*F1 - 624260*DF6*F3 \
     - 216090*DF5*F4 + 64827*F4^2 - 144060*DF4*F5 + 154350*DF6^2*F5 + 192080*F3*F5 \
     - 102900*DF6*F5^2 + 17150*F5^3 \
     + F6*(-96040*DF3 + 308700*DF5*DF6 + 192080*F2 - 246960*DF6*F4 - 154350*DF5*F5 + 113190*F4*F5 \
     + F6*(-61740*DF4 + 132300*DF6^2 + 89180*F3 - 176400*DF6*F5 + 47775*F5^2 \
     + F6*(-44100*DF5 + 35280*F4 + F6*(-37800*DF6 + 22050*F5 + 2700*F6^2))))",
    "2352980*D2F2 - 16470860*DF1 + 1512630*DF4*DF5 + 2268945*DF3*DF6 - 5126135*DF6*F2 \
     - 1512630*DF5*F3 - 907578*DF4*F4 + 648270*DF6^2*F4 + 907578*F3*F4 - 756315*DF3*F5 \
     + 1080450*DF5*DF6*F5 + 1596665*F2*F5 - 1080450*DF6*F4*F5 - 360150*DF5*F5^2 + 288120*F4*F5^2 \
     + 65883440*Fy \
     + F6*(-672280*DF2 + 540225*DF5^2 + 1296540*DF4*DF6 + 2352980*F1 - 1620675*DF6*F3 \
     - 864360*DF5*F4 + 324135*F4^2 - 648270*DF4*F5 + 926100*DF6^2*F5 + 756315*F3*F5 \
     - 771750*DF6*F5^2 + 154350*F5^3 \
     + F6*(-324135*DF3 + 926100*DF5*DF6 + 732305*F2 - 926100*DF6*F4 - 617400*DF5*F5 + 524790*F4*F5 \
     + F6*(-185220*DF4 + 396900*DF6^2 + 231525*F3 - 661500*DF6*F5 + 209475*F5^2 \
     + F6*(-132300*DF5 + 119070*F4 + F6*(-113400*DF6 + 75600*F5 + 8100*F6^2)))))",
];

pub(crate) fn flat(order: usize) -> Option<&'static [FlatCondition]> {
    match order {
        3 => Some(FLAT_3),
        4 => Some(FLAT_4),
        5 => Some(FLAT_5),
        6 => Some(FLAT_6),
        7 => Some(FLAT_7),
        _ => None,
    }
}

pub(crate) fn grouped(order: usize) -> Option<&'static [&'static str]> {
    match order {
        3 => Some(GROUPED_3),
        4 => Some(GROUPED_4),
        5 => Some(GROUPED_5),
        6 => Some(GROUPED_6),
        7 => Some(GROUPED_7),
        _ => None,
    }
}
