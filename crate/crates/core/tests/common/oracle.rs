//! Reference values computed with an independent statistics package and frozen here.

#![allow(dead_code)]

pub struct WelchCase {
    pub a: &'static [f64],
    pub b: &'static [f64],
    pub t: f64,
    pub df: f64,
    pub p_greater: f64,
    pub p_less: f64,
    pub p_two: f64,
}

/// Welch tests: samples, statistic, degrees of freedom and the three tail probabilities.
pub const WELCH_CASES: [WelchCase; 20] = [
    WelchCase { a: &[0.8, 0.9, 1.0], b: &[0.5, 0.6, 0.7], t: 3.6742346141747686, df: 4.0, p_greater: 0.010655820564378348, p_less: 0.9893441794356216, p_two: 0.021311641128756696 },
    WelchCase { a: &[1.0, 2.0, 3.0, 4.0], b: &[1.0, 2.0, 3.0, 4.0], t: 0.0, df: 6.0, p_greater: 0.5, p_less: 0.5, p_two: 1.0 },
    WelchCase { a: &[0.1, 0.4, 0.35, 0.8], b: &[0.2, 0.3, 0.25, 0.6, 0.45], t: 0.32348552578303325, df: 4.504736223158257, p_greater: 0.38039878277612105, p_less: 0.619601217223879, p_two: 0.7607975655522421 },
    WelchCase { a: &[1.0, 1.0, 1.0], b: &[0.0, 0.5, 1.0], t: 1.7320508075688774, df: 2.0, p_greater: 0.11270166537925828, p_less: 0.8872983346207417, p_two: 0.22540333075851657 },
    WelchCase { a: &[5.1, 4.9, 6.2, 5.7, 5.5, 5.1, 5.2, 5.0], b: &[4.8, 5.3, 4.6, 5.0, 4.9], t: 2.1615519700164305, df: 10.999059930240968, p_greater: 0.02678071633114383, p_less: 0.9732192836688562, p_two: 0.05356143266228766 },
    WelchCase { a: &[0.0, 0.25, 0.5, 0.75, 1.0], b: &[0.5, 0.5, 0.75, 0.25, 0.5, 0.6], t: -0.08821621827824645, df: 5.135583797590399, p_greater: 0.5334790342990074, p_less: 0.46652096570099255, p_two: 0.9330419314019851 },
    WelchCase { a: &[10.0, 12.0], b: &[1.0, 2.0, 3.0], t: 7.794228634059948, df: 1.6842105263157894, p_greater: 0.01281004544069251, p_less: 0.9871899545593075, p_two: 0.02562009088138502 },
    WelchCase { a: &[0.33, 0.5, 0.66, 0.25, 0.8, 0.9, 0.1], b: &[0.4, 0.45, 0.5, 0.55, 0.6], t: 0.04865702395768484, df: 7.149046099332617, p_greater: 0.4812620703652649, p_less: 0.5187379296347351, p_two: 0.9625241407305298 },
    WelchCase { a: &[-1.0, -2.0, -3.0], b: &[1.0, 2.0, 3.0], t: -4.898979485566356, df: 4.0, p_greater: 0.9959750534495811, p_less: 0.00402494655041886, p_two: 0.00804989310083772 },
    WelchCase { a: &[100.0, 101.0, 99.5, 100.2], b: &[100.1, 100.3, 99.9, 100.0, 100.4], t: 0.10755662160624478, df: 3.533100117368229, p_greater: 0.46008626861904117, p_less: 0.5399137313809589, p_two: 0.9201725372380823 },
    WelchCase { a: &[0.577807, 0.67405, 0.753021, 0.318802, 0.336815, 0.908893, 0.310458, 0.85099, 0.970501, 0.20401, 0.611312, 0.413349], b: &[0.401986, 0.557196, 0.889834, 0.441817, 1.113077, 0.836025, 0.547947, 0.343333, 0.857192, 0.1829, 0.107186, 0.170597, 0.43287, 0.37018, 0.251583], t: 0.7167077522087761, df: 24.801186051017027, p_greater: 0.24012495440261328, p_less: 0.7598750455973867, p_two: 0.48024990880522656 },
    WelchCase { a: &[0.016269, 1.112066, 0.527783, 1.115794, 1.421786, 0.232093, -0.693601, -0.342425, -1.247117, 2.057281, 0.165183, -0.712126, 1.198955, 1.089557, 1.693839, 0.134055, 2.320886, -0.937005, 0.218413, -0.424384, 0.623699, -0.054107, -1.327414, 0.777028, 1.116915, -0.641635, -1.120824, -0.238658, 0.268193, -0.967256], b: &[-0.235823, 0.302583, 2.223788, -0.490006, -0.518294, 1.610587, 0.679843, 0.144643, -0.826017, -0.71136, 0.497952, -2.265547, 1.352198, 0.518582, 0.798674, -0.840359, -1.488051, 3.761934, 1.1994, 0.718663, 0.517262, 1.352654, 0.667811, 1.04797, -0.243829, 0.316106, -0.526696, 0.842091, -0.434402, 1.293935], t: -0.46259898625653684, df: 56.59062534213955, p_greater: 0.677287148499668, p_less: 0.322712851500332, p_two: 0.645425703000664 },
    WelchCase { a: &[0.836594, 0.545884, 0.799319, 0.656123, 0.392869, 0.611928, 0.424023, 0.317033, 0.543642, 0.749364, 0.633756, 0.768511, 0.248373, 0.57542, 0.507922, 0.589277, 0.774408, 0.732016, 0.351628, 0.922291, 0.632851, 0.72813, 0.380994, 0.577989, 0.258326, 0.602492, 0.620447, 0.378609, 0.605042, 0.692874, 0.553496, 0.641861, 0.433341, 0.417931, 0.423408, 0.46281, 0.680464, 0.437212, 0.695555, 0.416332, 0.45139, 0.502157, 0.543086, 0.334279, 0.492529, 0.508351, 0.386593, 0.458406, 0.407881, 0.782829], b: &[0.357308, 0.533599, 0.45812, 0.747966, 0.484059, 0.329964, 0.542349, 0.486544, 0.483407, 0.481027, 0.389763, 0.59362, 0.510578, 0.520511, 0.694634, 0.476898, 0.2991, 0.626225, 0.490013, 0.555408, 0.566669, 0.605898, 0.496308, 0.514289, 0.4199, 0.456853, 0.484969, 0.566461, 0.380769, 0.351986, 0.426134, 0.639073, 0.439964, 0.680734, 0.541444, 0.546874, 0.515656, 0.447235, 0.443485, 0.263696], t: 1.9246523349176272, df: 85.25975168178697, p_greater: 0.028803952297628103, p_less: 0.9711960477023719, p_two: 0.05760790459525621 },
    WelchCase { a: &[0.377531, 0.291493, 0.246832, 0.257754, 0.336151, 0.349931, 0.398507, 0.525793], b: &[0.736875, 0.133408, 0.486895, 0.22882, 0.708546, 0.559908, 0.138796, 1.018636, 0.782235, 1.23424, 0.715372, 0.708832, 1.398166, 0.858327, 0.044764, 0.565026, 0.447355, 0.869048, -0.164218, 0.056928], t: -2.343034011448018, df: 22.920518149177997, p_greater: 0.9859118783746305, p_less: 0.01408812162536957, p_two: 0.02817624325073914 },
    WelchCase { a: &[0.759847, 0.718115, 0.799233, 0.841347, 0.777561, 0.722213, 0.822177, 0.886633, 0.715281, 0.842281, 0.749295, 0.747549, 0.797597, 0.874785, 0.832441, 0.74085, 0.778084, 0.823095, 0.784596, 0.688494, 0.875704, 0.767541, 0.784582, 0.824221, 0.787833], b: &[0.486008, 0.488732, 0.503483, 0.49168, 0.562962, 0.54294, 0.612991, 0.42577, 0.552815, 0.615058, 0.456542, 0.555476, 0.542113, 0.408993, 0.600467, 0.538049, 0.575368, 0.421198, 0.564741, 0.467186, 0.469257, 0.543747, 0.515448, 0.499121, 0.541108], t: 17.243597653221578, df: 47.68556630280408, p_greater: 1.9873575033509187e-22, p_less: 1.0, p_two: 3.9747150067018375e-22 },
    WelchCase { a: &[0.444608, 0.584763, 0.103583, 0.542719, 0.77678, 0.832037, 0.488475, 0.70468, 0.514768, 0.763911, 0.8918, 0.630428, 0.714177, 0.50543, 0.567956, 0.647905, 0.26213, 0.240297, 1.126598, 0.73805, 0.334224, 0.489605, 0.368248, 0.540962, 0.683333, 0.705624, 0.753681, 0.285434, 0.348633, 0.213714, 0.317564, 0.406542, 0.836795, 0.222879, 0.640008, 0.806705, 0.677638, 0.816888, 0.242807, 0.469342, 0.532305, 0.662998, 0.46851, 0.235104, 0.367735, 0.692961, 0.850684, 0.311425, 0.352456, 0.693103, 0.442081, 0.641647, 0.443377, 0.13915, 0.655115, 0.764236, 0.647081, 0.975189, 0.402671, 0.509371, 0.192313, 0.307035, 0.339889, 0.533671, 0.368815, 0.379299, 0.65726, 0.547588, 0.30651, 0.233762, 0.522928, 0.805468, 0.536965, 0.41922, 0.643246, 0.736442, 0.572077, 0.802507, 0.332597, 0.393156, 0.447054, -0.098725, 0.483864, 0.560192, 0.339803, 0.364637, 0.453703, 0.894335, 0.460824, 0.25598, 0.610877, 1.033175, 0.778148, 0.6099, 0.302598, 0.326404, 0.642085, 0.215156, 0.613195, 0.669945], b: &[0.36798, 0.446568, 0.661258, 0.708462, 0.594509, 0.196513, 0.202345, 0.712679, 0.192537, 0.713957, 0.542694, 0.80194, 0.5489, 0.911861, 0.536369, 0.513606, 0.673435, 0.450355, 0.27796, -0.051859, 0.514919, 0.80496, 0.336626, 0.462604, 0.714659, 0.419725, 0.709434, 0.429468, 1.154135, -0.077995, 0.371381, 0.691785, 0.475906, 0.675794, 0.414557, 0.62466, 0.45968, 0.611475, 0.221672, 0.721943, 0.722557, 0.342184, 0.858009, 0.781592, 0.447984, 0.448059, 0.761186, 0.693683, -0.009624, 0.673753, 0.505099, 0.860405, 0.609075, 0.871651, 0.950148, 0.859716, 0.456574, 0.588409, 0.323282, 0.752874, 0.480992, 0.536023, 0.274244, 0.863493, 0.476065, 0.02668, 0.571884, 0.388963, 0.497019, 0.281646, 0.605651, 0.520168, 0.445338, 0.545968, 0.503476, 0.784322, 0.427896, 0.166863, 0.526476, 0.429371], t: -0.17849528701695502, df: 164.67539362476063, p_greater: 0.5707232878205873, p_less: 0.42927671217941266, p_two: 0.8585534243588253 },
    WelchCase { a: &[1.233796, -0.43643, 0.825889, 1.792922, 1.035995, -0.350141], b: &[0.357495, -0.00211, 0.357579, 0.532454, 0.325185, 0.787871], t: 0.76406359805365, df: 5.840297703861669, p_greater: 0.2372776353404059, p_less: 0.7627223646595941, p_two: 0.4745552706808118 },
    WelchCase { a: &[0.673865, 0.747061, 0.609039, 0.159441, 0.511827, 0.597072, 0.418945, 0.581326, 0.281818, 0.303293, 0.449377, 0.469751, -0.084852, 0.641932, 1.010809, 0.393722, 0.264627, 0.65837, 0.599529, 0.69664, 0.199262, 0.155577, 0.634859, 0.810299, 0.488993, 0.845526, 0.332008, 0.10166, 0.429699, 0.536373, -0.32859, 0.145141, 0.590845, 0.634047, 1.051656, 0.210312, 0.57647, 0.365781, 0.275449, 0.481889], b: &[-0.062606, 0.553529, 0.654453, 0.688481, 1.332621, 0.790147, 0.441146, -0.087468, 0.423958, 0.663866], t: -0.559827841690871, df: 11.114652059314123, p_greater: 0.7066489512710374, p_less: 0.2933510487289625, p_two: 0.586702097457925 },
    WelchCase { a: &[0.600628, 0.554562, 0.677155, 0.538587, 0.589842, 0.552867, 0.505827, 0.642807, 0.594161, 0.608211, 0.513325, 0.687817, 0.674258, 0.589009, 0.596253], b: &[0.984365, 0.259144, 0.355811, 1.213277, 0.876601, 0.648721, 0.400169, 0.95793, -0.579586, 0.694067, 1.54739, 0.994256, 1.131311, 0.492158, 0.843858, 1.139489, 0.060019, 0.485401, 0.408899, 0.469715, 0.460402, 1.216405, 0.702221, 0.597771, 0.092663, 0.901959, 0.034011, 0.449846, 0.179167, 0.527882, -0.399206, -0.131281, 0.546252, 0.86689, 0.052838, 1.374447, -0.161888, 0.419233, 0.938854, 0.360257, 0.333116, 0.183848, -0.591759, 1.11955, 0.072734, 0.164704, -0.470125, 0.502996, 1.237802, 1.000694, 0.303812, 0.584615, 1.192949, 0.01824, 0.769421, 0.219836, -0.26855, 1.0324, 0.915023, 0.939153], t: 1.009543412871422, df: 64.50244038471622, p_greater: 0.1582431280807463, p_less: 0.8417568719192536, p_two: 0.3164862561614926 },
    WelchCase { a: &[0.307438, 0.640859, 0.767079, 0.53297, 0.213516, 0.594058, 0.476522, 0.592446, 0.519523, 0.470108, 0.703999, 0.681632, 0.58537, 0.300091, 0.619715, 0.798752, 0.561196, 0.5164, 0.295363, 0.296919, 0.535334, 0.669553, 0.435471, 0.751019, 0.335718, 0.52935, 0.646389, 0.647509, 0.408206, 0.343461, 0.460031, 0.509178, 0.862374, 0.455248, 0.521482, 0.125997, 0.44802, 0.44632, 0.477669, 0.48594, 0.319928, 0.192783, 0.348165, 0.552191, 0.574643, 0.446437, 0.14516, 0.407313, 0.856939, 0.598013, 0.636267, 0.54983, 0.307375, 0.359732, 0.587488, 0.492783, 0.520912, 0.431499, 0.974213, 0.337879, 0.191864, 0.476255, -0.105937, 0.558415, 0.789254, 0.282381, 0.438781, 0.538412, 0.627222, 0.4939, 0.438482, 0.622692, 0.447808, 0.407885, 0.572418, 0.807261, 0.75194, 0.528395, 0.232694, 0.580182, 0.925361, 0.19098, 1.051814, 0.494285, 0.340508, 0.128486, 0.401183, 0.406966, 0.618024, 0.832114, 0.69273, 0.382268, 0.632192, 0.468714, 0.515906, 0.688202, 0.292845, 0.399075, 0.271013, 0.623802, 0.252531, 0.51871, 0.596973, 0.896502, 0.592675, 0.255364, 0.645089, 0.384837, 0.431415, 0.649689, 0.711494, 0.671417, 0.397554, 0.234123, 0.337196, 0.445422, 0.50604, 0.015518, 0.493807, 0.784373, 0.58674, 0.572368, 0.287095, 0.299515, 0.784475, 0.037114, 0.570053, 0.470486, 0.357604, 0.502848, 0.457277, 0.491652, 0.790694, 0.537436, 0.451168, 0.493839, 0.542567, 0.563247, 0.505988, 0.714626, 0.522953, 0.145358, 0.479252, 0.576841, 0.80001, 0.852488, 0.447075, 0.63595, 0.570622, 0.405392, 0.71401, 0.621049, 0.394414, 0.420898, 0.588827, 0.639863, 0.392151, 0.931792, 0.5952, 0.494861, 0.700834, 0.730292, 0.465382, 0.328826, 0.608282, 0.501481, 0.448304, 0.516279, 0.62357, 0.542127, 0.379537, 0.677092, 0.063024, 0.43702, 0.146347, 0.376229, 0.700838, 0.489563, 0.566566, 0.29529, 0.591036, 0.562441, 0.58615, 0.311787, 0.794518, 0.812662, 0.372545, 0.498391, 0.72721, 0.840273, 0.476644, 0.687747, 0.964087, 0.167854, 0.688589, 0.656465, 0.712467, 0.577696, 0.461704, 0.641925], b: &[0.311545, 0.30468, 0.4426, 0.643631, 0.444694, 0.976349, 0.500063, 0.662596, 0.731771, 0.438905, 0.229747, 0.569427, 0.424206, 0.323311, 0.927155, 0.458783, 0.628357, 0.274257, 0.450088, 0.523829, 0.731318, 0.525517, 0.656307, 0.429092, 0.604098, 0.37816, 0.621802, 0.272696, 0.604165, 0.705539, 0.526177, 0.647643, 0.534263, 0.612429, 0.272506, 0.462577, 0.904739, 0.631813, 0.486045, 0.629094, 0.296986, 0.504105, 0.835978, 0.424544, 0.341283, 0.391216, 0.206765, 0.345109, 0.538841, 0.27403, 0.724195, 0.688585, 0.886979, 0.378528, 0.49967, 0.289577, 0.668609, 0.36912, 0.541562, 0.601913, 0.506023, 0.327967, 0.488124, 0.583872, 0.454394, 0.058521, 0.481175, 0.529097, 0.474766, 0.318827, 0.682553, 0.556486, 0.47343, 0.477199, 0.334328, 0.551711, 0.649742, 0.361973, 0.679097, 0.578144, 0.464915, 0.503548, 0.151758, 0.288208, 0.577277, 0.377179, 0.531418, 0.431694, 0.309237, 0.449041, 0.594528, 0.394617, 0.437166, 0.402097, 0.386446, 0.431144, 0.544983, 0.662229, 0.711024, 0.481214, 0.420658, 0.249253, 0.618312, 0.308637, 0.284647, 0.942026, 0.486898, 0.28774, 0.649696, 0.553715, 0.666015, 0.488482, 0.471475, 0.268643, 0.504452, 0.578615, 0.626801, 0.42451, 0.580803, 0.401343, 0.958398, 0.590763, 0.340378, 0.854216, 0.699215, 0.299838, 0.696499, 0.31299, 0.312148, 0.683322, 0.567958, 0.523929, 0.628771, 0.733316, 0.540629, 0.410929, 0.717045, 0.242083, 0.715685, 0.649724, 0.608655, 0.558945, 0.275568, 0.804286, 0.515339, 0.631837, 0.299266, 0.738405, 0.611977, 0.614291], t: 0.1099684677652567, df: 336.89702372451956, p_greater: 0.4562499291675417, p_less: 0.5437500708324583, p_two: 0.9124998583350834 },
];

/// Student-t upper tail: `(t, df, P(T > t))`.
pub const T_SF_GRID: [(f64, f64, f64); 64] = [
    (-4.0, 1.0, 0.9220208696226307),
    (-1.5, 1.0, 0.8128329581890013),
    (-0.3, 1.0, 0.5927735790777423),
    (0.0, 1.0, 0.5),
    (0.7, 1.0, 0.3055998877857853),
    (2.0, 1.0, 0.1475836176504332),
    (3.6742, 1.0, 0.08458496548595756),
    (8.0, 1.0, 0.03958342416056554),
    (-4.0, 2.0, 0.9714045207910317),
    (-1.5, 2.0, 0.8638034375544995),
    (-0.3, 2.0, 0.6037571695799112),
    (0.0, 2.0, 0.5),
    (0.7, 2.0, 0.2781965123164327),
    (2.0, 2.0, 0.09175170953613696),
    (3.6742, 2.0, 0.03337230460468891),
    (8.0, 2.0, 0.00763403608266907),
    (-4.0, 3.5, 0.9895396918172982),
    (-1.5, 3.5, 0.8910909064923275),
    (-0.3, 3.5, 0.6094332950800552),
    (0.0, 3.5, 0.5),
    (0.7, 3.5, 0.2638170711728396),
    (2.0, 3.5, 0.06306926128795674),
    (3.6742, 3.5, 0.013431870794989077),
    (8.0, 3.5, 0.0011386632223602394),
    (-4.0, 5.0, 0.9948382922595843),
    (-1.5, 5.0, 0.9030481598787634),
    (-0.3, 5.0, 0.6118754788683627),
    (0.0, 5.0, 0.5),
    (0.7, 5.0, 0.25757447415740825),
    (2.0, 5.0, 0.05096973941492914),
    (3.6742, 5.0, 0.007190124313935695),
    (8.0, 5.0, 0.00024645333028622187),
    (-4.0, 10.0, 0.9987408336876317),
    (-1.5, 10.0, 0.9177463367772799),
    (-0.3, 10.0, 0.6148396962171008),
    (0.0, 10.0, 0.5),
    (0.7, 10.0, 0.24994378508644222),
    (2.0, 10.0, 0.036694017385370196),
    (3.6742, 10.0, 0.0021436296885302365),
    (8.0, 10.0, 5.887471394833078e-06),
    (-4.0, 30.0, 0.9998090771819581),
    (-1.5, 30.0, 0.927967035435677),
    (-0.3, 30.0, 0.6168769473578236),
    (0.0, 30.0, 0.5),
    (0.7, 30.0, 0.24466022174983582),
    (2.0, 30.0, 0.02731252248149155),
    (3.6742, 30.0, 0.00046342763189658533),
    (8.0, 30.0, 3.132911237850386e-09),
    (-4.0, 100.0, 0.9999392381778497),
    (-1.5, 100.0, 0.9316174709376556),
    (-0.3, 100.0, 0.6176000598498482),
    (0.0, 100.0, 0.5),
    (0.7, 100.0, 0.24277630322718685),
    (2.0, 100.0, 0.02410608936556682),
    (3.6742, 100.0, 0.00019281634014896502),
    (8.0, 100.0, 1.1364324038640401e-12),
    (-4.0, 1000.0, 0.9999659950403956),
    (-1.5, 1000.0, 0.933034980588957),
    (-0.3, 1000.0, 0.6178802479163779),
    (0.0, 1000.0, 0.5),
    (0.7, 1000.0, 0.24204505699630124),
    (2.0, 1000.0, 0.022885173246625833),
    (3.6742, 1000.0, 0.00012562847530465034),
    (8.0, 1000.0, 1.7133307411957495e-15),
];

/// Full-document and hallucinated-content fractions for the directional tests,
/// with `(t, df, p)` of hallucinated against full for each alternative.
pub mod hallucination {
    pub const FULL: [f64; 20] = [0.600062, 0.614937, 0.586293, 0.55547, 0.577266, 0.550418, 0.603007, 0.667011, 0.57539, 0.568976, 0.624492, 0.617844, 0.605271, 0.553477, 0.598537, 0.634765, 0.532789, 0.577119, 0.504939, 0.535523];
    pub const HALL_SHIFTED: [f64; 20] = [0.207913, 0.288245, 0.236628, 0.313563, 0.307838, 0.290653, 0.174162, 0.273065, 0.297575, 0.305665, 0.223493, 0.276112, 0.251074, 0.259558, 0.353045, 0.259623, 0.298374, 0.344219, 0.27082, 0.294415];
    pub const HALL_UNSHIFTED: [f64; 20] = [0.605523, 0.603189, 0.538747, 0.603807, 0.667941, 0.522643, 0.642969, 0.605968, 0.567926, 0.700021, 0.638113, 0.540036, 0.603726, 0.628834, 0.590561, 0.634146, 0.596674, 0.633362, 0.671926, 0.566217];
    pub const SHIFTED_LESS: (f64, f64, f64) = (-23.529754840240713, 37.554630860984936, 2.220054234728517e-24);
    pub const SHIFTED_GREATER: (f64, f64, f64) = (-23.529754840240713, 37.554630860984936, 1.0);
    pub const UNSHIFTED_LESS: (f64, f64, f64) = (1.768992985483619, 36.97148874297053, 0.957427688595186);
    pub const UNSHIFTED_GREATER: (f64, f64, f64) = (1.768992985483619, 36.97148874297053, 0.042572311404813996);
}
