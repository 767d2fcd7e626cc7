// Frozen 40-digit reference values, shared by the special-function tests
// and the acceptance suite.

const UPPER_GAMMA: [(f64, f64, f64); 22] = [
    (0.5, 0.1, 0.65472084601857702),
    (0.5, 2.0, 0.045500263896358414),
    (1.0, 0.3, 0.74081822068171787),
    (1.5, 1.0, 0.57240670447087983),
    (1.5, 8.0, 1.1339842897853227e-3),
    (2.0, 0.5, 0.90979598956895014),
    (2.0, 5.0, 0.040427681994512803),
    (2.5, 3.7, 0.19255043307939573),
    (3.0, 1.0, 0.9196986029286058),
    (3.0, 12.0, 5.2225805003289783e-4),
    (4.0, 2.0, 0.85712346049854705),
    (5.0, 5.0, 0.44049328506521241),
    (5.0, 15.0, 8.5664121077530039e-4),
    (7.5, 3.0, 0.97974774671781337),
    (10.0, 4.0, 0.99186775720306614),
    (10.0, 10.0, 0.45792971447185221),
    (10.0, 25.0, 2.2147663824878358e-4),
    (20.0, 15.0, 0.87521878496747518),
    (25.0, 30.0, 0.1572420272383916),
    (0.75, 40.0, 1.3701874121884645e-18),
    (50.0, 45.0, 0.75319796559982973),
    (3.5, 0.01, 0.99999999146941953),
];

const HYP2F1: [(f64, f64, f64, f64, f64); 22] = [
    (1.0, 1.0, 2.0, -1.0, 0.69314718055994531),
    (0.5, 1.0, 1.5, -0.3, 0.91486648924557189),
    (1.5, 1.0, 2.5, -0.3, 0.85133510754428113),
    (2.5, 2.0, 4.5, -0.3, 0.74138861842041886),
    (4.5, 4.0, 8.5, -0.3, 0.56449368967934622),
    (0.5, 0.5, 1.5, 0.25, 1.0471975511965977),
    (1.0, 2.0, 3.0, 0.4, 1.3853202970748836),
    (2.0, 3.0, 4.5, -0.8, 0.4411802873860462),
    (1.5, 2.0, 3.0, -2.0, 0.30940107675850306),
    (3.0, 1.0, 2.5, -5.0, 0.13397521146596255),
    (2.0, 2.0, 3.0, -10.0, 0.029776087274149229),
    (1.0, 0.5, 2.0, -50.0, 0.245657137141714),
    (2.5, 3.0, 5.5, -100.0, 1.4723970870307062e-4),
    (0.5, 1.5, 2.0, 0.7, 1.5164147784250471),
    (1.0, 1.0, 2.5, 0.9, 1.9455046973352729),
    (3.0, 4.0, 5.0, 0.45, 4.0830955968788054),
    (1.5, 1.5, 4.0, -0.95, 0.66032503670323402),
    (6.0, 2.0, 9.0, -0.5, 0.56801560205579657),
    (2.0, 5.0, 3.0, -0.2, 0.5497685185185185),
    (1.0, 3.0, 4.0, -1000.0, 1.4970207262643379e-3),
    (0.25, 0.75, 1.25, -3.0, 0.79246391547400528),
    (2.0, 2.0, 4.0, 0.99, 16.517930377221691),
];

const G_INTEGRAL: [(f64, f64, f64, f64, f64); 22] = [
    (1.0, 1.0, 1.0, 1.0, 0.5),
    (0.5, 1.0, 1.0, 1.0, 1.2533141373155003),
    (1.5, 2.0, 1.0, 0.5, 0.14407518787935566),
    (2.0, 0.5, 1.0, 1.5, 0.54511802280392852),
    (2.5, 1.0, 3.0, 2.0, 0.067505566587221802),
    (1.0, 3.0, 0.5, 1.0, 0.28571428571428571),
    (3.0, 1.0, 2.0, 2.5, 0.23402940635085075),
    (2.0, 2.0, 2.0, 3.0, 0.34375),
    (1.5, 0.3, 1.2, 1.0, 0.48240083637217847),
    (0.5, 4.0, 1.0, 0.5, 0.92729521800161223),
    (4.0, 1.0, 1.0, 1.0, 0.375),
    (3.5, 2.0, 1.0, 2.0, 0.23688118239502048),
    (1.0, 1.0, 10.0, 1.0, 0.090909090909090909),
    (2.0, 10.0, 1.0, 2.0, 0.023290758827948911),
    (1.0, 0.1, 0.1, 1.0, 4.9999999999999997),
    (2.5, 2.5, 2.5, 2.5, 0.089411294392164911),
    (5.0, 1.0, 2.0, 3.0, 0.85596707818930041),
    (1.0, 5.0, 5.0, 4.0, 1.125),
    (0.75, 1.0, 1.0, 0.75, 0.75082304734031486),
    (6.0, 2.0, 3.0, 1.5, 0.013873098755250072),
    (1.5, 1.0, 0.7, 3.5, 3.6885213557901388),
    (2.0, 0.2, 0.5, 0.5, 1.9466976144312762),
];

const MEIJER_NN: [(usize, f64, f64, f64, f64); 24] = [
    (1, 1.0, 0.0, 0.5, 0.33333333333333333),
    (1, 2.0, 1.0, 2.0, 0.2962962962962963),
    (1, 3.0, 0.0, 0.1, 1.5026296018031557e-3),
    (2, 1.0, 0.0, 0.1, 0.18055610662107781),
    (2, 1.0, 0.0, 1.0, 0.59081795030183868),
    (2, 1.0, 0.0, 10.0, 1.1494390975822249),
    (2, 2.0, 1.0, 1.0, 0.13504410292613455),
    (2, 2.0, 2.0, 3.0, 0.19035516107890878),
    (2, 3.0, 0.0, 0.5, 0.054078113602408315),
    (2, 1.0, 3.0, 5.0, 0.052475991228481226),
    (3, 1.0, 0.0, 1.0, 0.80865282942855731),
    (3, 2.0, 1.0, 0.3, 0.035400879159575566),
    (3, 2.0, 2.0, 4.0, 0.15599544534140796),
    (3, 3.0, 0.0, 20.0, 2.3260299871164361),
    (4, 1.0, 0.0, 1.0, 1.1750510692779296),
    (4, 1.0, 2.0, 0.5, 0.17714977821272256),
    (4, 2.0, 0.0, 2.0, 0.13881733274447193),
    (4, 2.0, 3.0, 10.0, 0.13054324449252017),
    (4, 3.0, 1.0, 0.2, 0.012512181905271279),
    (2, 4.0, 2.0, 50.0, 5.8008688044926558),
    (3, 1.0, 4.0, 2.0, 0.07010286602904028),
    (4, 2.0, 5.0, 1.0, 0.10913404978836001),
    (6, 1.0, 0.0, 1.0, 2.7038512422420723),
    (6, 2.0, 3.0, 5.0, 0.075734417069836794),
];
