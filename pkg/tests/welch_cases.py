"""Welch t-test reference values, computed once with an arbitrary-precision
incomplete beta and cross-checked against a second statistics library."""

WELCH_CASES = [
    ([0.0671, 1.2692, -2.2244, 1.5121, 0.4203, -0.3081, 1.1772, -2.5155, 0.7144, -0.3175, 1.7377, 1.7967, -0.6716, -0.6812, -1.6483, -0.4191, 1.5751, 2.544, 1.4119, 1.0624],
     [-1.3613, 1.4924, 0.2966, 3.1591, 1.3919, 4.5458, -0.2595, 2.8885, 1.4532],
     -1.732073707035446, 0.10794432452376604),
    ([-3.1085, -2.6477, -0.1199, -4.556, -3.6166, -1.5682, -1.024, -5.7247, -2.6625, -0.4991, -0.4575],
     [-0.9731, 3.4801, -1.7539, 0.5382, -0.9103, 2.6381, -2.1826, 2.6963, -2.7733, -3.2266],
     -2.2339125781514517, 0.03960353975898594),
    ([0.3276, 0.5113, 0.4997, 0.8342, 0.8007, 0.635, 0.8481, 0.8578, 0.1055, 1.3151, 0.4948, 0.2903, 0.7331, 0.3334, 0.743, 0.0716, 0.7791, 0.0487, 0.6507, 0.4345, 0.3286, 0.5689, 0.3015, 0.2293, 0.6577, 1.2218, 0.1464, 0.9369],
     [-0.043, 0.776, -2.7448, 2.1383, 1.6443, 3.6577, 0.4468, 1.8115],
     -0.5973558700133876, 0.5687696312382979),
    ([-2.7239, 0.2856, -2.4057, 1.6909, 0.0444, 1.1944, 0.0713, 1.9345, -1.0011, -0.1238, 2.2147, -2.3902, 0.1229],
     [-1.1181, -2.508, 3.6321, 0.171, -0.1467, -2.9188, -2.0378, 2.9899, 0.1708, -0.3632, 2.6498, -1.6389, 4.725, -0.2807, -0.6466, -0.0204, 0.7438, 2.4207, -1.1159, -1.4321],
     -0.37607731515308745, 0.7095289479135427),
    ([-1.6177, 1.9145, -2.9465, 2.9391, -3.1231, -0.6623, 0.0265, 2.0275, 3.1211, -0.3308, 4.1865, -2.4563, 0.3489, -1.0309, 0.9492, -2.78, -3.1372, 2.688, 2.1519, 0.9215, -2.1693, 0.9972, 0.6427, 2.5664, 0.1186, -4.4012, -0.9804, -0.5184, 1.4869, -1.0575, -3.0402, 2.3632, 0.4921, -3.1361, -2.0754, 1.7974, -3.7525, 1.9169, -0.3953],
     [-0.212, 0.0695, 0.9958, -0.4588, 1.1053, -0.9523, -0.4656, 0.5652, -0.3521, -0.15, 0.4999, 0.5986, 0.3242, -0.2808, 0.4053, 0.127, 0.7285, 0.2655, -0.4301, -0.0368, -0.8738],
     -0.588212095257951, 0.5592403167890533),
    ([-2.5135, -1.0266, 0.6382, -0.7086, -0.2354],
     [-2.0249, 0.083, -1.3139, -2.6965, 0.9339, -1.9035, -0.6486, 1.0294, 0.4438, -0.3767, -1.2624, 0.0074, -0.3834, 0.5708, 0.1062, 0.4718, -1.9229, -1.2316, -0.1389, 0.0854, -0.9797, -1.0629, -0.3392, -0.1762, 1.7963, -0.722, 0.2663, -2.1472, -0.4179, -0.6547, -1.6921, -1.3512, -1.0023, -1.1489],
     -0.3415166068770571, 0.7467720109826365),
    ([-1.2523, 0.9452, -0.9873, -0.4571, -0.7223, -0.4226, -2.7301, -1.2148, 2.8626, -0.0118, -0.9733, -1.5345, 0.0902, -0.6407, -0.2276, 1.0645, -0.3687, -0.8286, -1.8555, -3.2521, 0.185, 0.0505, -1.9459, -1.7474, -2.7962, -2.5922, -1.3343, -0.7698, 1.0606, 0.449, -1.7222, 0.9362, -4.4734, -1.4225],
     [-3.5772, -2.4672, -0.6652, -3.3911, 0.4832],
     1.302828882396956, 0.251571762017338),
    ([4.2792, 3.644, 0.955, 3.4141, -1.3686, -2.5049, 0.8449, 4.127, -0.1733, 1.906, 2.9745, 0.4043, 2.0903, -1.0885, 3.0408],
     [0.582, 0.0155],
     1.9451326969495126, 0.07705310244964234),
    ([-0.9927, -1.225, 0.6606, -0.9684, -0.9642, -0.8995, -1.7826, -1.34, -1.1812, -0.6349, -0.4023, -1.5208, -0.0234],
     [1.1387, 1.4941, 0.0409, 0.6211, 0.447, -0.9884, -2.176, 0.6318, 0.3166, -1.6765, -0.1296, -1.7908, 4.8118, 0.9033, 1.1123, 1.6766, -7.6753, -0.1851, 2.1186, -2.6009, 0.5166, 1.0236, -2.8713, 6.3367, -0.0234],
     -1.790911121850507, 0.0836728161277553),
    ([6.0273, -1.802, -5.2772, 0.9533, -0.027, 2.7572, -4.2574, -1.4843, -0.656, -1.2324, -1.6505, -1.9419, 3.5979, -1.6018, 2.2713, -1.0082, 0.9331, 2.3191, 0.6663, -6.2595, -3.6676, -2.4374, 0.8648, -2.8578, -3.2027, 2.6598, 4.7399, -3.4164, -1.4656, -0.5531, -3.716, -2.09, -5.1153, 0.2385, -1.4874],
     [1.8334, -0.045, -3.5588, 0.0545, 3.244, -0.1099, 1.7668, -2.2164, 1.6654, -2.1931, 0.8755],
     -1.2091846478852986, 0.23882127665634953),
    ([-0.815, -1.7359, 3.4687, 1.74, 1.4685, 0.6776, 4.1813, 1.9358, -2.6837, 0.4089, 0.6922, -3.4729, -1.8909, 2.0558, -0.1958, 2.5692, -0.4235, -1.8733, 5.079, 1.6653, 0.0407, 2.4603, 0.386, -0.8912, 1.7192, 0.9901, -0.6859, 0.7598, -0.5076, 3.5931, 1.6431],
     [-1.4554, 3.0276, 0.0218, 2.0988, 1.8098, 3.8938, 0.4865, -0.0142, 0.0093, -0.5275, 1.4073, 1.6319, 1.9615, -5.5918, -0.9619, -0.7086, -1.0987, 2.3214, -0.625, -1.1964, 0.826, -0.551, 0.2949, -0.9588, -1.2163, 1.4171, 0.2458, -0.8445, 0.0493, 0.5396, -2.074, 0.7388, 1.2506, -0.7829, 0.7032, -3.1391],
     1.374316345413501, 0.17444140927182106),
    ([1.8383, -0.5996, -0.4702, -6.2497, -4.9111, -1.8146, -1.2139, 1.8806, -0.9619, 1.939, -4.2373, 4.3648, -2.4247, -3.5112, -4.0263, -5.206, -0.0399, -2.6426],
     [-0.7578, 2.629, -0.2476, 0.7071, -0.3237, 2.7229, -0.4771, -0.2314, -1.6861, 0.8441, 0.6692, 2.6446, 2.614, 4.1593, 1.2072, 1.2597, -0.02, 0.9321, -0.8598, 0.0775, 0.379, 1.5114],
     -3.189554882543846, 0.00395533730519503),
    ([-0.5878, -0.924, -0.9035, -3.997],
     [1.1947, 1.0707, -1.3371, 1.6295, 1.7457, -2.6521, 2.0966, -0.1361, 1.0954, 0.8247, -0.2902, -3.1092, 0.8468, -0.4901, 0.1605, 3.847, -2.3878, -0.4987, 2.2917],
     -2.122235481769511, 0.09021225757982515),
    ([-2.3829, 3.0258, -0.4777, -0.135, 3.5609, 3.6077, -0.0831, -1.1323, 0.293, 1.6234, -0.8077, 0.9676, 0.3457],
     [-2.3454, -2.2077, -1.508, 0.1753, -0.0125, -0.9269, -0.0745, -2.1325, -1.3765, -0.0057, 0.905, -1.3004, -0.7355],
     2.61221620136916, 0.01722322141492638),
    ([-0.4801, -0.855, -0.6836, -0.4586, -0.313, -0.9117, -0.7071],
     [0.6369, 0.5463, 0.6288, 0.7839, 0.783, 0.5318, 0.5746, 0.6816, 0.5454, 0.5281],
     -14.111890796496645, 9.056822160834183e-07),
    ([-0.3653, -0.1316, 0.6464, 3.3896, 3.1745, 1.3514, 1.4282, 1.7939, 0.7636, 0.3983, 2.8795, -1.1774, 2.562, -0.4592, -1.5997, 1.8473, -0.3686, -2.8688, 1.4127, 1.3955, 0.6939, 1.9846, -0.7688, 0.9681, 2.7406, 1.0237, 0.6817, -0.21, 0.599, 1.1579, -0.2835],
     [-0.2144, -0.0236, -0.156, 0.0464, -0.2632, -0.0271, -0.229, -0.469, -0.5512, -0.7121, 0.3219, -0.6567, -0.5893, -0.6003, -0.1138, 0.0424, -0.1841, 0.2907, -0.179],
     3.816677922488995, 0.0005410562532749459),
    ([0.4427, 1.2521, -0.2313, 0.3485, 0.7215, 0.679, 0.415, -0.6224, 1.1799, 0.323, 3.6551, -0.9807, 1.8704, 1.5668, 1.4284, -0.0458, 0.1871, 0.4521, -0.0077, 0.2787, -0.2313, -0.2169, 1.5966, -1.7513, 0.9354, 0.9686, 2.7512, -0.4565, -0.3775, 1.8973, 0.8809],
     [-0.9595, 0.8367, -1.7937, 0.5983, 2.6364, -1.365, -0.9104, -3.3685, 3.1623, -0.1152, 1.0199, -1.9143, 1.3131, -2.4864, -1.5908, -0.7477, 4.9129, -2.2192, 1.921, -1.5027, 0.0045, -1.1697, -1.5718, 3.5955, 0.2043, 1.736, 2.337, 0.3776, -1.6359, 0.829, -1.6678, -0.4287, 2.8144, 2.3274, -0.8637, -1.6552],
     1.4030688330512533, 0.16609576483915842),
    ([-1.3921, 2.2963, 1.6978, 1.5316, 0.1946, 3.7055, -0.3806, 3.1333, 1.2661, 2.2769, 1.5348, -0.394, 1.9418, 0.9482, 0.295, 1.0274, 1.1077, 0.4904, -0.298, 0.2574, 2.6841, -1.3424, 0.9203, 1.2329, 1.3828],
     [-0.4409, 1.1158, -3.0633, 3.3898, 0.2191, -2.9484, -2.2588, 1.8406, 3.6044, 1.2263, -0.099, -1.0498, -1.1776, -2.0849, 0.2902, 3.8726, 0.8012, -0.6737, -0.6873, 2.4275, 1.8914, 5.3268, 5.0426, -0.9578, 2.4724, -1.3227, 0.4694, 1.2934, -0.2737, -0.5473, 2.1582, 5.1733, 1.8208, 3.506, -0.3473, 1.9839, 3.8318, 3.4024, 1.8381],
     -0.018797723118637664, 0.9850634798992752),
    ([-2.0359, 2.676, -1.6805, 1.8896, -3.7994, -1.1363, 0.6581, 3.3054, 1.4563, -0.0371, 2.3278, 2.0934, 0.6792, 1.1795, 2.0136, -0.658, 1.4282, 1.8342, 1.8062, 2.5718, 1.5728, 4.5054, 0.3852, 0.6935, 0.7313, -1.2284, 0.5518, -0.8759, 1.0073, -0.6682, -0.6094, 1.5453],
     [-1.6548, -2.1146, 0.2226, -1.9963, 2.5749, -1.3164, 1.0561, 2.843, 0.3074, -1.119, -1.8764, -1.0078, -1.8472, -1.8302, 0.1894, 1.3553, 2.3008, -0.8339, -0.8348, 0.1048, 1.1553, -1.145, 0.774, -0.0218, 1.999, -1.6552, 4.4763, -1.2799, -3.5735, 1.7117, 2.7402, -0.4122],
     1.7506807103636848, 0.08497365786006723),
    ([0.7569, -1.7019, -3.8878, -1.6521, -1.0027, 0.7949, 0.9974, -3.0771, -0.6244, -0.6103, 0.025, 0.9277, -0.1818, 0.4362, -3.6952, 2.5728, 2.4833, 0.1131, 1.3891, -0.7987, -1.0315, -3.0951, -2.8915, 0.303],
     [2.1157, -0.3482, 0.6004, 2.675, -0.001, 0.6047, 0.442, 1.6248, 2.8257, -1.1754, -0.9698, -0.934, 0.052, -0.6911, 1.3606, 0.701, -0.3627, 0.3013, 0.294, -0.7197, -0.0372, -2.5101, 0.1541, -1.184, 0.2681, 1.6307, 0.5694, -0.6274, -0.0545, -0.9392, -2.5277, 0.1462, 0.6892],
     -1.589692007028249, 0.12020512212353678),
]
