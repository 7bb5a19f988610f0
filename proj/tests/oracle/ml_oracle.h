#pragma once

// Frozen reference values for E_{gamma,mu}(z); see gen_ml_oracle.py.
// Do not edit by hand.

struct MLRefRow {
    double gamma;
    double mu;
    double z;
    double value;
};

inline constexpr MLRefRow ml_ref_stress[] = {
    {1, -1.5, -6, -0.36792713458580026243},
    {1, -1.5, -20, -0.065124842819778215024},
    {1, -1.5, -120, -0.0090826892731197851571},
    {1, -1.5, -900, -0.0011799889417349174025},
    {1, 0.5, -6, -0.068989946469163509402},
    {1, 0.5, -20, -0.015325407164895395749},
    {1, 0.5, -120, -0.0023808055479027301540},
    {1, 0.5, -900, -0.00031396251206554676699},
    {1, 1, -6, 0.0024787521766663584230},
    {1, 1, -20, 2.0611536224385578280e-9},
    {1, 1, -120, 7.6676480737241107983e-53},
    {1, 1, -900, 1.7871790562413287519e-86},
    {1, 2.5, -6, 0.17047487423767099020},
    {1, 2.5, -20, 0.054970170877993999488},
    {1, 2.5, -120, 0.0093638145598865173507},
    {1, 2.5, -900, 0.0012530577121480265366},
    {1.01, -1.5, -6, -0.39172149715888174696},
    {1.01, -1.5, -20, -0.066098641246985349832},
    {1.01, -1.5, -120, -0.0091834234343391177839},
    {1.01, -1.5, -900, -0.0011925810984396594239},
    {1.01, 0.5, -6, -0.070420904656668643243},
    {1.01, 0.5, -20, -0.015342842576153662105},
    {1.01, 0.5, -120, -0.0023809917265381302807},
    {1.01, 0.5, -900, -0.00031394324000287896221},
    {1.01, 1, -6, -0.000093980960539333802691},
    {1.01, 1, -20, -0.00055736003105647329089},
    {1.01, 1, -120, -0.000084283718458128876999},
    {1.01, 1, -900, -0.000011071220500861984651},
    {1.01, 2.5, -6, 0.17109741083437472491},
    {1.01, 2.5, -20, 0.055043829189133004985},
    {1.01, 2.5, -120, 0.0093683526831049215848},
    {1.01, 2.5, -900, 0.0012534839957424503867},
    {1.05, -1.5, -6, -0.50295656556098656345},
    {1.05, -1.5, -20, -0.068762574295229674160},
    {1.05, -1.5, -120, -0.0094972769949900203160},
    {1.05, -1.5, -900, -0.0012322881015439863440},
    {1.05, 0.5, -6, -0.076132143191823709789},
    {1.05, 0.5, -20, -0.015226559132489897940},
    {1.05, 0.5, -120, -0.0023594889655570130975},
    {1.05, 0.5, -900, -0.00031103826533318778389},
    {1.05, 1, -6, -0.010943221617517941160},
    {1.05, 1, -20, -0.0027357796763370632791},
    {1.05, 1, -120, -0.00041130933200402391831},
    {1.05, 1, -900, -0.000053988975358576928282},
    {1.05, 2.5, -6, 0.17360610355582274486},
    {1.05, 2.5, -20, 0.055293151407565046944},
    {1.05, 2.5, -120, 0.0093777072467966098066},
    {1.05, 2.5, -900, 0.0012539982998884884262},
    {1.2, -1.5, -6, -1.1943100424819773137},
    {1.2, -1.5, -20, -0.030251862573796968602},
    {1.2, -1.5, -120, -0.0090814433034845327505},
    {1.2, -1.5, -900, -0.0011958437638749312008},
    {1.2, 0.5, -6, -0.10121110188790014708},
    {1.2, 0.5, -20, -0.011896933375208272910},
    {1.2, 0.5, -120, -0.0019619676284820583478},
    {1.2, 0.5, -900, -0.00026021089104057799316},
    {1.2, 1, -6, -0.063362758813981830765},
    {1.2, 1, -20, -0.0096399059942185080187},
    {1.2, 1, -120, -0.0014583429897435157810},
    {1.2, 1, -900, -0.00019134069216143213041},
    {1.2, 2.5, -6, 0.18358434287455154147},
    {1.2, 2.5, -20, 0.055467350964293456176},
    {1.2, 2.5, -120, 0.0092781177323257375952},
    {1.2, 2.5, -900, 0.0012379176039791984526},
    {1.5, -1.5, -6, -1.0844819202570256980},
    {1.5, -1.5, -20, 2.9025426864053539865},
    {1.5, -1.5, -120, 0.0090044203405313269068},
    {1.5, -1.5, -900, 0.000020562610153892907700},
    {1.5, 0.5, -6, -0.31965092674223404330},
    {1.5, 0.5, -20, 0.039853399472427007511},
    {1.5, 0.5, -120, 0.000039019399606881451605},
    {1.5, 0.5, -900, 1.3058548088644601999e-6},
    {1.5, 1, -6, -0.28606868168430838629},
    {1.5, 1, -20, 0.019595747930187505735},
    {1.5, 1, -120, -0.0023528710865389321234},
    {1.5, 1, -900, -0.00031343357966736206016},
    {1.5, 2.5, -6, 0.21434478028071806438},
    {1.5, 2.5, -20, 0.049020212603490624713},
    {1.5, 2.5, -120, 0.0083529405923878244344},
    {1.5, 2.5, -900, 0.0011114593706440748467},
    {1.8, -1.5, -6, 6.3209926087712124575},
    {1.8, -1.5, -20, -28.109612871897482588},
    {1.8, -1.5, -120, 65.766055204290127251},
    {1.8, -1.5, -900, -6.6056222568482543693},
    {1.8, 0.5, -6, -1.0184605014346065177},
    {1.8, 0.5, -20, 1.0116321995908551234},
    {1.8, 0.5, -120, -0.25201356048371803053},
    {1.8, 0.5, -900, 0.0040054970178357107199},
    {1.8, 1, -6, -0.63373435184013987899},
    {1.8, 1, -20, 0.20184270449898259242},
    {1.8, 1, -120, 0.0043780413579055768056},
    {1.8, 1, -900, 0.00016550391086393326549},
    {1.8, 2.5, -6, 0.28139410309914265140},
    {1.8, 2.5, -20, 0.0072105424467971603361},
    {1.8, 2.5, -120, 0.0071779990552284452815},
    {1.8, 2.5, -900, 0.00085405128937879950970},
    {1.95, -1.5, -6, 9.1203711471684058910},
    {1.95, -1.5, -20, -28.781614066619045025},
    {1.95, -1.5, -120, -296.82906221766637563},
    {1.95, -1.5, -900, 959.39339401526229090},
    {1.95, 0.5, -6, -1.4080997751012045935},
    {1.95, 0.5, -20, 1.2476134559029459518},
    {1.95, 0.5, -120, 2.1767193113374232655},
    {1.95, 0.5, -900, -0.78818799631309431417},
    {1.95, 1, -6, -0.74928160169090889536},
    {1.95, 1, -20, -0.060338132941290635514},
    {1.95, 1, -120, 0.38428961333934394336},
    {1.95, 1, -900, 0.075676453113956898368},
    {1.95, 2.5, -6, 0.32969247134679798365},
    {1.95, 2.5, -20, -0.021597323990820759372},
    {1.95, 2.5, -120, -0.010678278185432492449},
    {1.95, 2.5, -900, 0.0013186750208092395132},
    {2, -1.5, -6, 9.5361281540356886644},
    {2, -1.5, -20, -21.831637278400964498},
    {2, -1.5, -120, -269.03227258059362075},
    {2, -1.5, -900, -3981.6349835714378095},
    {2, 0.5, -6, -1.5188309943958119082},
    {2, 0.5, -20, 1.1127389733030890856},
    {2, 0.5, -120, 2.2454617897354536497},
    {2, 0.5, -900, 4.4245090286212206964},
    {2, 1, -6, -0.76990572974989303124},
    {2, 1, -20, -0.23794839198059109428},
    {2, 1, -120, -0.041111547799449951155},
    {2, 1, -900, 0.15425144988758405072},
    {2, 2.5, -6, 0.34717009632392803252},
    {2, 2.5, -20, -0.027427469487766639935},
    {2, 2.5, -120, -0.014010601718230811356},
    {2, 2.5, -900, -0.0042892438278594048994},
};

inline constexpr MLRefRow ml_ref_spots[] = {
    {1.5, 1, -5, -0.30008205041313088080},
    {1.5, 1, -50, -0.0045783851058392779913},
    {1.5, 1, -3, -0.17556537379997824292},
    {1.8999999999999999, 2, -4.5, 0.35705097408601886160},
    {1.1000000000000001, -2, -2, -1.1708065646988356644},
    {2, 3, 9.5, 1.0448596941556818935},
    {1.3, 0.5, 8, 241.87415273034834284},
    {1.7, 1.7, -4.9000000000000004, 0.11614487029178477525},
    {1.7, 1.7, -5.0999999999999996, 0.096594508599038018687},
    {1.25, -0.25, -4.9000000000000004, 0.29398901626664299959},
    {1.25, -0.25, -5.0999999999999996, 0.30518534571143247119},
    {1.5, 1.5, -7, -0.064944217202865987718},
    {1.5, 0.5, -7, -0.18223599784061122284},
    {1.5, 1, -10000, -0.000028209475474899628667},
    {1.2, 2, -1000000, 8.5893728782708926810e-7},
    {1.8, -1, -100000000, -8.7826974679889642072e-9},
};
