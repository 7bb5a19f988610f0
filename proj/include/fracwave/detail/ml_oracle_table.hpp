#pragma once

// Frozen reference values for E_{gamma,mu}(z), generated once by
// tests/oracle/gen_ml_oracle.py from the defining series in adaptive
// high-precision arithmetic (>= 200 bits).  Do not edit by hand.

namespace fracwave::detail {

struct MLOracleRow {
    double gamma;
    double mu;
    double z;
    double value;
};

inline constexpr MLOracleRow ml_oracle_table[] = {
    {1.5746341861514122, -1.3605023409786325, -239.45164914821146, -0.0083248960227100627727},
    {1.229699123112733, -1.9904643643951874, -0.24164543065313179, 0.084397773735951599471},
    {1.8312899731587082, -1.6402212420390936, -3.528921853015321, 5.1806619107896442284},
    {1.7091521683846544, -1.8986884818586969, -2569.2640813193952, 0.0015758271648966871540},
    {1.4389680309560697, -1.7844059925067617, -0.0075382314442241378, 0.33204699152027477339},
    {1.4091575540046857, -0.74089516777687603, -8801.2787197829075, -0.000037943390718815996642},
    {1.560471932753039, -1.9080704754646036, -0.0015937296905922209, 0.16725279058637698882},
    {1.3941948477922339, -1.7665468540772888, -28.523375114765376, -0.59068355279966896209},
    {1.4227130945699293, 1.7716588696923865, -5.6268766402554133, 0.10387395197288797176},
    {1.2233539834360523, 0.57806249293289591, -5.1885899657311887, -0.15646274141776325387},
    {1.1471891185857814, 0.14501725101148288, -1383.9241173983871, 1.7449095431123962910e-6},
    {1.2953736063686061, 2.5378601272573187, -0.23051219589883085, 0.68682605033825761207},
    {1.731726165953305, 0.52414312818465314, -605.29588011737815, 0.000066215579348640725678},
    {1.5066804352709573, 1.2630744332278128, -3129.4746315578241, -0.000063999399802508065535},
    {1.3285475608249695, -0.43848034465743924, -0.18124513589787111, -0.41717823629269341879},
    {1.7682364713783922, 2.455899724170151, -0.097959655503752963, 0.76341865151772854172},
    {1.9877629648774922, 1.8282708782803749, -25.935948525337775, -0.19477956802272288954},
    {1.6017280680701882, 2.7411251036286837, -0.0022645719541385823, 0.62603453086018318478},
    {1.963039607966969, 2.2839726680482295, -1.1447836917575354, 0.73400549799109327272},
    {1.7430747574026633, -0.022817165120662564, -0.21142743468135927, -0.24045766763681592716},
    {1.1307014652610463, 2.2543224576888408, -13.446470581179021, 0.079063412306689807303},
    {1.6524845468598635, 2.1956684042497985, -0.50598826254110163, 0.81278030556665642945},
    {1.4861176443270625, 2.0047310042573336, -4.3567200449144474, 0.25167545016655648287},
    {1.4927265177672835, 1.3636481062106514, -22.52826094261362, 0.0043585667620896036696},
    {1.7506255318617898, 1.5296147926374868, -0.20910184591184816, 1.0488950554620907065},
    {1.6297333939150263, -1.4179826975166177, -0.08613365461395768, 0.37462977132707554715},
    {1.847515950422788, 1.709654499767066, -109.83521925725931, 0.012682035057583762447},
    {1.4066215811456901, 0.047032512868588228, -0.011869692765250758, 0.034918037321107028688},
    {1.3505970435322741, 1.2006383490127259, -9538.3461580089661, -0.000014137194188035565924},
    {1.7335841120363684, 1.2487264783121721, -4143.0772338821253, -0.000067951922106456147892},
    {1.6464132488208625, 0.44635730982333399, -49.202958561900161, 0.019990901492125602316},
    {1.2910764225779638, 2.1816526838452655, -5879.753073427486, 0.00015801870724412398059},
    {1.8085448140933764, 0.48268370099209923, -1.8669110698884679, -0.61117734933790946651},
    {1.9410129533556426, 0.49590255972838726, -0.010945904850068596, 0.55105848642885114840},
    {1.8206299808350781, -1.1078811247924558, -4.8220375918403251, 4.5076111068523189892},
    {1.9410997789732733, -1.0736398103225153, -0.0017614974296159094, 0.073817640643599574868},
    {1.7533441252644, 1.1819431288951767, -0.0057274387335041295, 1.0801942534310865951},
    {1.5296504731178298, 1.0217868947801056, -0.021946531793638622, 0.99642363169808443601},
    {1.4875515968957256, -1.3397502008182149, -0.01261365364432001, 0.33147248470688281691},
    {1.8410884261676492, -1.7834944578251004, -0.0014420584333969136, 0.33093453853727286584},
    {1.5243829849261805, -1.0148799161720223, -0.10246822302541968, -0.033870752728568206030},
    {1.215407412171345, 2.7191424949922371, -1.3026629208697411, 0.44965511272121977688},
    {1.3375586992462245, -0.87704272559601337, -2.9997904389068686, 1.1929127350591213876},
    {1.4443040080529586, -1.8984404542284776, -0.012801256935261502, 0.18593439331298940059},
    {1.5471477933204276, -0.028312615894657611, -0.0028839931645895894, -0.031082619716864897252},
    {1.3695914837264487, -1.7346880973651084, -8541.639005106701, 0.000082360071768965235192},
    {1.5572930404705203, 2.1578523078428562, -8.9622973319812704, 0.083941795954773730913},
    {1.9109777284293663, -0.55859158454707325, -0.016426796647703978, -0.29669551948293191780},
    {1.3409747981346816, 2.8595886776748358, -0.043396035860057927, 0.56135903175342235122},
    {1.3281633604804874, 0.55366282957617985, -207.78301658334914, -0.00091632177710880260585},
};

}  // namespace fracwave::detail
