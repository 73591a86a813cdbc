"""Published conductor and Sha columns for the E_i(n, p) family, transcribed verbatim."""

# (n, p): (N(n, p), (|Sha_1|, |Sha_2|, |Sha_3|, |Sha_4|) as square roots)
MID_TABLE = {
    (20, -756): (42551829106699251024, (27993, 55986, 27993, 27993)),
    (20, -2000): (190293894141760627320, (15081, 60324, 15081, 60324)),
    (20, 192): (109418989131512359065, (3780, 60480, 945, 60480)),
    (22, -692): (11978814802342833513168, (15194, 30388, 7597, 60776)),
    (21, -128): (1969541804367222465954, (34234, 68468, 34234, 68468)),
    (20, -180): (60788327295284644080, (20970, 41940, 10485, 83880)),
    (21, 3): (31512668869875559452120, (10962, 43848, 5481, 87696)),
    (20, -2448): (1653442502431742344680, (22028, 88112, 22028, 88112)),
    (20, 2704): (11379574869677285146824, (48538, 97076, 97076, 48538)),
    (21, 12): (281363114909603209392, (12768, 102144, 3192, 102144)),
    (20, -608): (16631686347989878669080, (25787, 103148, 51574, 51574)),
    (21, 192): (984770902183611232737, (54648, 109296, 27324, 109296)),
    (20, 4788): (25871512096873143639456, (27745, 110980, 27745, 27745)),
    (20, 2680): (23938195173261478962720, (14474, 115792, 14474, 57896)),
    (20, -801): (34625031227394133415352, (29338, 58676, 29338, 117352)),
    (22, 1344): (62040566837567507664447, (60930, 121860, 30465, 60930)),
    (20, -1436): (1832369310703810488288, (32455, 129820, 32455, 129820)),
    (20, 4768): (10032879618827902147272, (16254, 130032, 8127, 65016)),
    (21, -24): (31512668869875559452768, (34092, 68184, 17046, 136368)),
    (20, -1376): (37640132261240251922904, (70010, 140020, 140020, 70010)),
    (22, 64): (8862938119652501095881, (72306, 144612, 36153, 144612)),
    (21, -1536): (1969541804367222468066, (75897, 151794, 75897, 151794)),
    (20, -6): (14005630608833581979328, (19248, 76992, 4812, 153984)),
    (22, 304): (27493195799738370745848, (39722, 158888, 19861, 79444)),
    (21, 1516): (11663380372737145525968, (25866, 206928, 12933, 103464)),
    (21, 480): (39390836087344449300840, (54110, 216440, 27055, 108220)),
    (23, 1452): (6451697601805864768272, (55698, 222792, 27849, 222792)),
}

TOP_TABLE = {
    (21, 4): (15756334434937779726048, (130614, 261228, 65307, 261228)),
    (21, 1248): (102416173827095568122280, (70375, 281500, 70375, 70375)),
    (20, -201): (234594312697962498467304, (141540, 141540, 283080, 141540)),
    (23, 960): (398832215384362549313205, (96254, 385016, 48127, 192508)),
    (24, 832): (373306953599763346160205, (75780, 303120, 37890, 151560)),
    (20, 1120): (30637316956823460343320, (20440, 327040, 20440, 81760)),
    (23, -84): (17448909423065861532624, (184991, 369982, 184991, 184991)),
    (22, 480): (354517524786100043822760, (99938, 399752, 49969, 199876)),
    (23, -8): (7441767284139709375008, (102120, 204240, 51060, 408480)),
    (21, -233): (149845956054714394972728, (51317, 205268, 51317, 410536)),
    (23, -96): (638131544614980078907464, (264696, 529392, 132348, 529392)),
    (24, -96): (302272836922885300534872, (412146, 824292, 206073, 824292)),
    (23, -348): (37011629587668844576720608, (514606, 1029212, 257303, 1029212)),
}

ALL_ROWS = {**MID_TABLE, **TOP_TABLE}

# Goldfeld-Szpiro table: label, sqrt|Sha|, conductor, printed GS value
GS_TABLE = [
    ("E4(23,-8)", 408480, 7441767284139709375008, "1.9342096803"),
    ("E2,4(24,96)", 824292, 302272836922885300534872, "1.2358410273"),
    ("E2(23,-84)", 369982, 17448909423065861532624, "1.0362798350"),
    ("E4(20,-180)", 83880, 60788327295284644080, "0.9024159172"),
    ("E2,4(21,12)", 102144, 281363114909603209392, "0.6220025144"),
    ("E2,4(23,1452)", 222792, 6451697601805864768272, "0.6179625870"),
    ("E2(20,1120)", 327040, 30637316956823460343320, "0.6110494864"),
    ("E2,4(21,4)", 261228, 15756334434937779726048, "0.5436405656"),
    ("E2,4(21,-1536)", 151794, 1969541804367222468066, "0.5191903468"),
]
