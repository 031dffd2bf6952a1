// Generated by scripts/tw1_table.py. Do not edit by hand.
//
// Tracy-Widom (beta = 1) distribution function on an equally spaced grid,
// computed as a Fredholm determinant with Gauss-Legendre Nystrom quadrature.

pub(crate) const TW1_LO: f64 = -10.0;
pub(crate) const TW1_HI: f64 = 10.0;

pub(crate) const TW1_CDF: [f64; 513] = [
    3.1553318588231166e-22,
    5.362882783383492e-22,
    9.079793702363463e-22,
    1.5312902278227365e-21,
    2.572427173784217e-21,
    4.304827819791212e-21,
    7.176417189687909e-21,
    1.1917658506791465e-20,
    1.9716066656915087e-20,
    3.2494522067089065e-20,
    5.33523600543923e-20,
    8.727097721617989e-20,
    1.4222021190866156e-19,
    2.309046536865013e-19,
    3.7350055081330027e-19,
    6.019307162318721e-19,
    9.665021576183283e-19,
    1.5462114711269323e-18,
    2.4646027737421126e-18,
    3.9142377783847615e-18,
    6.1940630567329346e-18,
    9.766474499918335e-18,
    1.5344066698588017e-17,
    2.402095035177198e-17,
    3.7470885339649766e-17,
    5.824479715296771e-17,
    9.021669476757761e-17,
    1.3924808642640766e-16,
    2.141761245086916e-16,
    3.2827539950671627e-16,
    5.014154498270658e-16,
    7.632302639161983e-16,
    1.1577590864595164e-15,
    1.7502176158889237e-15,
    2.636838786776135e-15,
    3.959123974365007e-15,
    5.924409277722157e-15,
    8.8354327286179e-15,
    1.3132692609193599e-14,
    1.9454914261161838e-14,
    2.8725052841235383e-14,
    4.227218583905672e-14,
    6.200365854230987e-14,
    9.064733872484704e-14,
    1.320913252577668e-13,
    1.9185867941635932e-13,
    2.777684146492875e-13,
    4.0085280816709755e-13,
    5.766257441472335e-13,
    8.26830599881759e-13,
    1.1818404442132221e-12,
    1.6839427575470981e-12,
    2.3918191696557825e-12,
    3.38663413199177e-12,
    4.780281990931599e-12,
    6.726519753564141e-12,
    9.435944430377132e-12,
    1.31960740507845e-11,
    1.839818171347162e-11,
    2.5573032258813606e-11,
    3.5438316503070924e-11,
    4.8961401567122885e-11,
    6.744206728750509e-11,
    9.262123096642933e-11,
    1.268233532326653e-10,
    1.731423438710659e-10,
    2.3568345504246563e-10,
    3.1987699636810895e-10,
    4.3288386265407324e-10,
    5.841180422401521e-10,
    7.859176578234703e-10,
    1.0544039774875315e-09,
    1.4105774914924043e-09,
    1.881711977958357e-09,
    2.5031218699642586e-09,
    3.3203957150276823e-09,
    4.39220960466568e-09,
    5.7938599046554706e-09,
    7.621685052106387e-09,
    9.998582607224693e-09,
    1.3080871085077281e-08,
    1.7066797354316845e-08,
    2.2207051022829673e-08,
    2.8817718380677203e-08,
    3.7296191845288744e-08,
    4.814064797795254e-08,
    6.197381996163999e-08,
    7.957192073902934e-08,
    1.0189972311855865e-07,
    1.3015297498302387e-07,
    1.6580952399312283e-07,
    2.1069074877781914e-07,
    2.6703514536067775e-07,
    3.375862008806707e-07,
    4.2569700351561753e-07,
    5.354543907252137e-07,
    6.718258293112546e-07,
    8.408326519359117e-07,
    1.049753747498236e-06,
    1.3073643181964842e-06,
    1.6242148735092581e-06,
    2.0129562327197524e-06,
    2.4887169486282126e-06,
    3.069540247570854e-06,
    3.7768882969053856e-06,
    4.636222361776026e-06,
    5.677668186920222e-06,
    6.9367767334353084e-06,
    8.455391203296343e-06,
    1.028263208681106e-05,
    1.2476012755628932e-05,
    1.5102698885258182e-05,
    1.8240925705026266e-05,
    2.198158772771119e-05,
    2.6430016179636687e-05,
    3.170795981742116e-05,
    3.795578515385455e-05,
    4.533491229856898e-05,
    5.403050262227701e-05,
    6.425441425075032e-05,
    7.624844095813206e-05,
    9.028784933021056e-05,
    0.00010668522808280267,
    0.00012579466212085932,
    0.0001480162422831122,
    0.0001738009197223255,
    0.00020365571149115217,
    0.00023814926113472935,
    0.0002779177549160852,
    0.0003236711907141102,
    0.0003761999926427203,
    0.0004363819600395439,
    0.0005051895346924332,
    0.0005836973650153912,
    0.000673090140403708,
    0.0007746706632041954,
    0.0008898681197045462,
    0.0010202465053025251,
    0.0011675131526532629,
    0.0013335273051554,
    0.0015203086717309009,
    0.0017300458925361487,
    0.0019651048391391697,
    0.0022280366668737174,
    0.0025215855316639535,
    0.002848695878692011,
    0.0032125192059679637,
    0.0036164202022545776,
    0.004063982156012184,
    0.004559011530146054,
    0.005105541596461175,
    0.005707835023940338,
    0.006370385316329861,
    0.007097916997114208,
    0.007895384443825733,
    0.00876796927881338,
    0.009721076230096378,
    0.010760327383758077,
    0.011891554758472932,
    0.013120791143178715,
    0.014454259150533185,
    0.015898358451576725,
    0.017459651170844418,
    0.019144845435943716,
    0.020960777091183005,
    0.02291438960107765,
    0.02501271218629885,
    0.02726283625170393,
    0.029671890183301287,
    0.03224701260817424,
    0.0349953242283177,
    0.03792389835582164,
    0.04103973029268267,
    0.04434970571350874,
    0.04786056822336169,
    0.051578886275711694,
    0.05551101964684401,
    0.05966308567285144,
    0.06404092546347599,
    0.06865007031333888,
    0.0734957085355078,
    0.078582652944701,
    0.0839153092177786,
    0.08949764535738733,
    0.09533316248077023,
    0.10142486714980335,
    0.10777524545033282,
    0.11438623901893497,
    0.1212592232033598,
    0.12839498752932985,
    0.1357937186310799,
    0.14345498578631052,
    0.151377729178152,
    0.15956025098754326,
    0.1680002093992976,
    0.17669461558425928,
    0.18563983369854897,
    0.19483158391920652,
    0.20426494851372498,
    0.21393438091929753,
    0.22383371778626357,
    0.2339561939193923,
    0.24429446003059158,
    0.2548406031974319,
    0.2655861699037698,
    0.2765221915219045,
    0.2876392120801967,
    0.2989273181460647,
    0.31037617064186585,
    0.32197503840040936,
    0.3337128332578569,
    0.3455781464745053,
    0.35755928626851335,
    0.369644316243989,
    0.3818210944930067,
    0.39407731315100347,
    0.40640053818659,
    0.4187782492100598,
    0.4311978790896375,
    0.4436468531707633,
    0.4561126279013039,
    0.46858272867443157,
    0.4810447867108739,
    0.493486574813221,
    0.5058960418367802,
    0.5182613457340877,
    0.5305708850432802,
    0.5428133287042332,
    0.5549776441002545,
    0.5670531232373528,
    0.5790294069872621,
    0.5908965073346439,
    0.6026448275828856,
    0.6142651804866895,
    0.6257488042930184,
    0.6370873766849655,
    0.6482730266354472,
    0.6592983441894771,
    0.6701563882048992,
    0.680840692091852,
    0.6913452676008944,
    0.7016646067185798,
    0.7117936817372514,
    0.7217279435730625,
    0.731463318412504,
    0.7409962027732374,
    0.7503234570696607,
    0.7594423977774281,
    0.7683507882941744,
    0.777046828595883,
    0.7855291437898279,
    0.7937967716657284,
    0.8018491493468588,
    0.8096860991422813,
    0.8173078137001567,
    0.8247148405604322,
    0.8319080662029589,
    0.8388886996844167,
    0.8456582559543633,
    0.8522185389372867,
    0.8585716244637908,
    0.8647198431300437,
    0.870665763160403,
    0.8764121733436999,
    0.8819620661091901,
    0.88731862080348,
    0.8924851872251254,
    0.8974652694688635,
    0.9022625101267377,
    0.9068806748887711,
    0.9113236375812243,
    0.9155953656760022,
    0.9196999063004214,
    0.9236413727723193,
    0.9274239316813612,
    0.9310517905335579,
    0.9345291859722382,
    0.9378603725851782,
    0.9410496123042635,
    0.9441011644009031,
    0.9470192760775087,
    0.9498081736525789,
    0.9524720543344996,
    0.9550150785767625,
    0.9574413630053152,
    0.9597549739067645,
    0.9619599212645462,
    0.9640601533285953,
    0.9660595517028173,
    0.9679619269334147,
    0.9697710145803,
    0.9714904717528857,
    0.9731238740909932,
    0.9746747131710707,
    0.9761463943175775,
    0.9775422347991415,
    0.9788654623889608,
    0.9801192142689664,
    0.9813065362573048,
    0.9824303823389069,
    0.9834936144791901,
    0.9844990027012364,
    0.9854492254072763,
    0.9863468699256901,
    0.9871944332653324,
    0.9879943230594892,
    0.988748858682421,
    0.9894602725220523,
    0.9901307113930373,
    0.9907622380750936,
    0.9913568329621991,
    0.9919163958089391,
    0.9924427475609913,
    0.9929376322574558,
    0.9934027189934042,
    0.9938396039317664,
    0.9942498123543163,
    0.9946348007422016,
    0.9949959588771524,
    0.9953346119550878,
    0.9956520227045186,
    0.9959493935027297,
    0.9962278684832889,
    0.996488535629015,
    0.9967324288450877,
    0.9969605300074551,
    0.9971737709822194,
    0.9973730356121489,
    0.9975591616668834,
    0.997732942753845,
    0.9978951301872475,
    0.9980464348129747,
    0.9981875287874378,
    0.9983190473088565,
    0.9984415902997089,
    0.9985557240393765,
    0.9986619827462665,
    0.9987608701089373,
    0.9988528607659786,
    0.9989384017345936,
    0.9990179137880071,
    0.9990917927820042,
    0.9991604109310647,
    0.9992241180346362,
    0.9992832426543012,
    0.9993380932426189,
    0.9993889592245454,
    0.9994361120324455,
    0.9994798060957175,
    0.9995202797861785,
    0.9995577563203629,
    0.9995924446199462,
    0.9996245401315087,
    0.9996542256069604,
    0.9996816718458319,
    0.9997070384007842,
    0.9997304742476039,
    0.999752118420977,
    0.9997721006173529,
    0.9997905417661404,
    0.9998075545705377,
    0.9998232440192254,
    0.9998377078701515,
    0.9998510371076081,
    0.9998633163737961,
    0.9998746243760037,
    0.9998850342705348,
    0.9998946140244863,
    0.9999034267564147,
    0.9999115310569329,
    0.9999189812902256,
    0.9999258278774494,
    0.999932117562937,
    0.9999378936641053,
    0.9999431963059133,
    0.9999480626407211,
    0.9999525270543128,
    0.9999566213588494,
    0.9999603749735085,
    0.9999638150934455,
    0.9999669668478048,
    0.9999698534473653,
    0.9999724963224451,
    0.9999749152516455,
    0.9999771284819556,
    0.9999791528407657,
    0.9999810038402602,
    0.9999826957746742,
    0.9999842418108325,
    0.9999856540724326,
    0.9999869437184175,
    0.9999881210158468,
    0.9999891954076191,
    0.9999901755753644,
    0.9999910694978296,
    0.9999918845050572,
    0.9999926273286396,
    0.9999933041482966,
    0.9999939206350374,
    0.9999944819911484,
    0.9999949929871863,
    0.9999954579962379,
    0.9999958810255867,
    0.9999962657460003,
    0.9999966155187887,
    0.9999969334208009,
    0.9999972222675021,
    0.9999974846342725,
    0.9999977228760574,
    0.9999979391454807,
    0.9999981354095457,
    0.9999983134650208,
    0.9999984749525999,
    0.9999986213699575,
    0.9999987540837431,
    0.9999988743406144,
    0.9999989832773972,
    0.9999990819304094,
    0.9999991712440238,
    0.9999992520785443,
    0.9999993252174263,
    0.9999993913739026,
    0.9999994511970701,
    0.9999995052774499,
    0.9999995541521094,
    0.9999995983093344,
    0.9999996381929165,
    0.9999996742060782,
    0.9999997067150618,
    0.9999997360524133,
    0.9999997625199883,
    0.9999997863916933,
    0.9999998079159966,
    0.9999998273182186,
    0.9999998448026244,
    0.9999998605543312,
    0.9999998747410527,
    0.9999998875146862,
    0.9999998990127621,
    0.9999999093597625,
    0.9999999186683267,
    0.9999999270403465,
    0.9999999345679581,
    0.9999999413344579,
    0.999999947415123,
    0.9999999528779634,
    0.9999999577844053,
    0.999999962189912,
    0.9999999661445461,
    0.9999999696934848,
    0.9999999728774811,
    0.9999999757332878,
    0.9999999782940386,
    0.9999999805895998,
    0.9999999826468797,
    0.9999999844901163,
    0.9999999861411363,
    0.9999999876195902,
    0.9999999889431603,
    0.9999999901277574,
    0.9999999911876929,
    0.9999999921358323,
    0.9999999929837451,
    0.9999999937418251,
    0.9999999944194118,
    0.9999999950248929,
    0.9999999955658,
    0.999999996048893,
    0.9999999964802396,
    0.9999999968652814,
    0.9999999972089015,
    0.9999999975154747,
    0.9999999977889262,
    0.9999999980327705,
    0.9999999982501567,
    0.9999999984439079,
    0.9999999986165473,
    0.9999999987703379,
    0.9999999989073008,
    0.9999999990292475,
    0.9999999991377968,
    0.9999999992343954,
    0.9999999993203378,
    0.9999999993967795,
    0.9999999994647547,
    0.9999999995251855,
    0.9999999995788951,
    0.9999999996266203,
    0.9999999996690162,
    0.9999999997066699,
    0.9999999997401017,
    0.9999999997697785,
    0.9999999997961155,
    0.9999999998194836,
    0.9999999998402108,
    0.9999999998585922,
    0.9999999998748887,
    0.9999999998893337,
    0.9999999999021345,
    0.9999999999134747,
    0.9999999999235183,
    0.9999999999324134,
    0.9999999999402867,
    0.999999999947256,
    0.9999999999534224,
    0.9999999999588779,
    0.9999999999637025,
    0.9999999999679688,
    0.9999999999717405,
    0.9999999999750738,
    0.9999999999780186,
    0.9999999999806201,
    0.999999999982918,
];
