"""Frozen arbitrary-precision reference values.

Generated by scripts/make_oracles.py; do not edit by hand.
"""

LOG_GAMMA_POINTS = [
    (0.37317740665939003, 0.8681069981399919),
    (0.6105575088844329, 0.3821694750467609),
    (1.057282088837693, -0.030437929460354424),
    (3.397751790750177, 1.0899243108697827),
    (4.447221859818343, 2.380782480451858),
    (6.678672762763215, 5.985534865242704),
    (7.964372561409198, 8.453433848171402),
    (12.304795557134538, 18.25082172640295),
    (12.348342305653967, 18.358410307721062),
    (14.458021508704398, 23.752036252193992),
    (15.150462704286378, 25.59438827766739),
    (15.431360754304077, 26.351180493516843),
    (20.875823354432736, 41.96091470390496),
    (22.689784488210396, 47.50744314909154),
    (23.041392626582116, 48.600099378867014),
    (24.230686605637917, 52.336099084435965),
    (26.124082565262892, 58.405778067064595),
    (28.79609560027697, 67.2074035891259),
    (29.959844702603533, 71.1211631868449),
    (32.732770228954365, 80.62875950279268),
    (35.61911901066732, 90.77864632209791),
    (38.84691489468294, 102.40963764870189),
    (41.70427430077065, 112.93347745305257),
    (43.207565355858065, 118.55065935206711),
    (43.230699254444275, 118.63751950015079),
    (43.96753728901421, 121.41061886817715),
    (44.15838150113993, 122.1309085113758),
    (47.891543671089806, 136.38412397167076),
    (47.949467215020356, 136.6076551679932),
    (49.112487026271715, 141.11068155091348),
    (49.37342597380347, 142.1248408750778),
    (50.28399219058994, 145.67469162257143),
    (51.77580684251663, 151.5264020721235),
    (57.19091878405464, 173.12333414331047),
    (57.48010768593758, 174.29170738946442),
    (58.893214894785, 180.02187618642247),
    (60.330340084117935, 185.88450980732736),
    (61.716763308350394, 191.5730349144137),
    (65.1036248542329, 205.60005379185728),
    (67.408049539, 215.2461609956554),
    (71.5804250539749, 232.91149541207943),
    (72.52487748343393, 236.9447175929216),
    (72.8287140673467, 238.24487257809182),
    (81.70662912355354, 276.7770914783742),
    (85.74931279917385, 294.6517816685272),
    (89.8688482259855, 313.06349803889395),
    (90.72896130298196, 316.9319203571348),
    (90.9049008316629, 317.7242340955813),
    (91.63642109683649, 321.0221750465529),
    (92.93643083722664, 326.897518379228),
    (94.45061913849013, 333.7638657365363),
    (98.04562394315674, 350.16307983812777),
    (99.93836621632528, 358.8506990819187),
    (100.356125286448, 360.77307587541753),
    (102.10660258445112, 368.8470626725798),
    (102.15097942440022, 369.05214273415646),
    (105.84682508915924, 386.1990621649185),
    (107.73328342985737, 395.00158291915534),
    (110.69536192611494, 408.8898689342648),
    (114.11612650335013, 425.02774089810754),
    (114.72761847753081, 427.923470249662),
    (114.89716081006954, 428.7269208617175),
    (120.72661396070613, 456.5027274063457),
    (122.66619165497636, 465.80766627850323),
    (124.27591718970247, 473.55357639430434),
    (130.39665753426075, 503.1951144000702),
    (131.54581856521412, 508.79285247698806),
    (132.44980350992046, 513.2033865662294),
    (137.53174277182015, 538.1121988157904),
    (138.34287835593224, 542.1055560899312),
    (138.68519213524235, 543.7922583947113),
    (140.72087491066242, 553.8402395209478),
    (146.246327015033, 581.2612335553279),
    (146.42522241935632, 582.152576875863),
    (147.31612520089936, 586.5947452472036),
    (149.0255445073886, 595.1332639739688),
    (157.34021277482503, 636.9414221628842),
    (160.69802781673852, 653.9516369630525),
    (164.30419937251185, 672.2983382118612),
    (167.3755532759733, 687.9867843364661),
    (167.48029984202424, 688.5228315522778),
    (169.45999299231207, 698.6663475874399),
    (172.43558287533878, 713.9561714775665),
    (172.65809221080968, 715.1015979342063),
    (173.79293567482262, 720.9479747616274),
    (174.60869268027608, 725.1551067725412),
    (177.33821429765965, 739.2598525211695),
    (178.83442550593736, 747.0094113895783),
    (178.91902393167425, 747.4479610879603),
    (182.1972957422974, 764.4729031512427),
    (182.9088983443274, 768.1762958664277),
    (188.16365194673736, 795.6088395142353),
    (188.6528781517904, 798.170405805722),
    (190.31337918756137, 806.8741805158493),
    (191.40840143999918, 812.6218663206023),
    (194.43108209248115, 828.5201690203246),
    (195.83230119212092, 835.9061461590943),
    (195.97950236499744, 836.682644123628),
    (196.96021308931486, 841.8587969825021),
    (197.52948026054963, 844.8656140487817),
]

BALL_NORMALIZED = {
    (3, 0.0): 3.141592653589793,
    (3, 0.5): 3.342171032841334,
    (4, 0.5): 4.805267502978015,
    (4, 1.5): 8.763364804397916,
    (5, 1.5): 12.599687956577936,
    (5, 2.5): 31.499219891444838,
}

FRAC_DERIV_RAW = {
    ('one-minus-t2-32', 0.3): 0.9470030598732502,
    ('one-minus-t2-32', 1.2): -0.5266850028295406,
    ('one-minus-t2-32', 2.4): -3.242364726642928,
    ('one-minus-t2-32', 3.6): 6.612981627783096,
    ('one-minus-t2', 0.5): 0.7522527780636751,
    ('one-minus-t2', 2.4): -1.8802139228378056,
}

FOURIER_POWER = {
    (-1.5, 3): 15.749609945722419,
    (-0.5, 4): 28.305362036042816,
    (-2.5, 3): 31.499219891444838,
    (-1.0, 5): 157.91367041742973,
}

LP_VOLUME = {
    (1.0, 3): 1.3333333333333333,
    (1.5, 3): 2.942765725884714,
    (2.0, 3): 4.188790204786391,
    (3.0, 4): 8.544875312264752,
}

