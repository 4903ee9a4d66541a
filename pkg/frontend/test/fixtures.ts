// Captured verbatim from the reference HTTP API serving the 3-day
// synthetic scene (spectrogram windowed to the first six hours).
// FRAME_TIMES holds exact X-Frame-Time header values.
import type { ManifestDoc, SpectrogramDoc } from "../src/types.js";

export const MANIFEST: ManifestDoc = {"levels": [{"level": 0, "label": "1 min", "period_ns": 60000000000, "count": 4320, "missing": [[2000, 2100]], "origin_ns": 0}, {"level": 1, "label": "5 min", "period_ns": 300000000000, "count": 864, "missing": [[400, 420]], "origin_ns": 120000000000}, {"level": 2, "label": "15 min", "period_ns": 900000000000, "count": 288, "missing": [[133, 140]], "origin_ns": 420000000000}, {"level": 3, "label": "30 min", "period_ns": 1800000000000, "count": 144, "missing": [[66, 70]], "origin_ns": 1320000000000}, {"level": 4, "label": "1 h", "period_ns": 3600000000000, "count": 72, "missing": [[33, 35]], "origin_ns": 3120000000000}, {"level": 5, "label": "2 h", "period_ns": 7200000000000, "count": 36, "missing": [[16, 17]], "origin_ns": 6720000000000}, {"level": 6, "label": "4 h", "period_ns": 14400000000000, "count": 18, "missing": [], "origin_ns": 13920000000000}, {"level": 7, "label": "12 h", "period_ns": 43200000000000, "count": 6, "missing": [], "origin_ns": 28320000000000}, {"level": 8, "label": "1 day", "period_ns": 86400000000000, "count": 3, "missing": [], "origin_ns": 71520000000000}, {"level": 9, "label": "3 d", "period_ns": 259200000000000, "count": 1, "missing": [], "origin_ns": 157920000000000}], "width": 6, "height": 4, "channels": 1, "base_period_ns": 60000000000, "origin_ns": 0, "strides": [5, 3, 2, 2, 2, 2, 3, 2, 3], "day_level": 8, "year_level": null, "drop_days": []};

export const SPECTROGRAM: SpectrogramDoc = {"levels": [{"level": 1, "origin_ns": 0, "period_ns": 60000000000, "first_slot": 0, "norms": [42.1312534768685, 25.780418413341938, 12.674668564569691, 2.8140007185305094, 3.8015830807620823, 7.172083125310016, 7.211277376634529, 8.818145320301976, 7.093706886742136, 11.835921047087723, 8.347850512647396, 12.016208879942612, 13.043039513856117, 11.428341246380183, 12.071092395073437, 10.072315810384978, 10.150704313034003, 12.30625790302051, 11.639998262785873, 8.15192422432236, 6.741015273196333, 6.435316698574874, 7.234827332450258, 4.240568565261922, 2.351519152571395, 1.5676793863806082, 0.6584259584039319, 0.3762412773595994, 1.53632217490902, 2.8218170262462614, 4.232725393368426, 6.983994168839839, 6.1766432830902795, 6.709652513688036, 8.58302186063311, 11.796750739921634, 12.290566887202607, 10.064471470483754, 10.017441639315978, 12.149478561707006, 11.561601584082752, 13.168468359742471, 12.071097067104349, 8.269488874176115, 11.561601584082752, 7.250498492136785, 9.3433411632033, 8.042170626149584, 8.245966950545858, 5.0557506508257655, 3.3705003365498665, 1.9360776378476774, 0.7524825547191988, 0.18028507708665636, 0.8622252028195257, 1.2933377312288057, 2.7591145753822968, 5.259555735279999, 8.794660772919014, 8.465450786736852, 9.170905262299867, 6.968323009153311, 11.65566358243376, 8.53598735743442, 12.306234542865951, 13.168443831580182, 11.420482890386223, 11.961328868834972, 9.8920034493678, 10.111486117551067, 12.619775705377041, 11.992715572501693, 8.230306302928883, 6.23152621421724, 5.99637589037063, 7.524855331389052, 4.765746596045395, 2.6180297539098794, 1.0817045129805738, 0.15677092800783965, 0.15677092800783965, 1.0817029799704307, 2.6180250818789674, 4.7657375439855025, 7.524840147288588, 5.996353698223798, 6.231501102051088, 8.230282358770458, 11.992698052385773, 12.619768697330674, 10.111493125597436, 9.89202096948372, 11.96135339699726, 11.420508586556238, 13.168467191734743, 12.306248558958687, 8.535996117492381, 11.655667086456946, 6.968324177161039, 9.170905262299867, 8.465450786736852, 8.794660772919014, 5.259555735279999, 2.7591145753822968, 1.2933377312288057, 0.8622252028195257, 0.18028507708665636, 0.7524825547191988, 1.9360776378476774, 3.3705003365498665, 5.0557506508257655, 8.24596578253813, 8.042166538122537, 9.34333240314534, 7.250483892040186, 11.56157939193592, 8.269462009998371, 12.071069034918876, 13.168441495564727, 11.56157939193592, 12.149463377606542, 10.017432295254155, 10.064466798452843, 12.290565719194879, 11.796750739921634, 8.58302186063311, 6.709652513688036, 6.1766432830902795, 6.983994168839839, 4.232725393368426, 2.8218170262462614, 1.53632217490902, 0.3762412773595994, 0.6584259584039319, 1.5676793863806082, 2.351519152571395, 4.240567105252262, 7.234823244423209, 6.435307938516914, 6.741000673099733, 8.151901448171666, 11.639971398608129, 12.30622987083504, 10.150677448856259, 10.072293618238147, 12.071077210972973, 11.428331902318359, 13.043034841825206, 12.016207711934884, 8.347850512647396, 11.835921047087723, 7.219121716535753, 9.194390977690555, 7.963768691411688, 8.426235511273235, 5.682811951708843, 3.448879787138999, 1.7244398935694996, 0.5094920884991371, 0.19596366457232975, 0.3919273291446595, 1.3638891940249063, 3.111849113212104, 5.635807232707219, 8.935763698511217, 8.112738733055808, 9.13956586294613, 7.1172656026158245, 11.843796923197603, 8.622221951996261, 12.149478561707006, 13.066559685474783, 11.373465907303455, 11.969177880767107, 9.954714952291658, 10.22905660744346, 12.447313524299728, 11.710505049286377, 8.018631182403409, 6.270672577224905, 6.466629233750867, 7.51696894320962, 4.522712804038673, 2.3828404478053478, 1.097351655508195, 0.666246573148181, 0.13326276496862893, 1.3011763770923557, 2.8374940259714294, 4.742215912357179, 7.015342328251536, 5.949323867056021, 6.443140014336994, 8.496791354098317, 12.11027788633999, 12.384619541491793, 10.017432295254155, 9.907695633193434, 12.055409555309629, 11.561594576036384, 13.325230180940057, 12.282728387340022, 8.434090947247876, 11.577275079784737, 7.015342328251536, 9.445231733351205, 8.269473690075651, 8.387047683991227, 4.898973645527716, 2.7042313522534043, 1.8028208041682923, 0.9014104020841461, 1.3923737144427707e-13, 0.9014104020841461, 1.8028208041682923, 2.7042313522534043, 4.898973645527716, 8.387047683991227, 8.269473690075651, 9.445231733351205, 7.015342328251536, 11.577275079784737, 8.434090947247876, 12.282728387340022, 13.325230180940057, 11.561594576036384, 12.055409555309629, 9.907695633193434, 10.017432295254155, 12.384619541491793, 12.11027788633999, 8.496790186090589, 6.443135926309946, 5.949315106998061, 7.015327144151072, 4.742193720210347, 2.8374657017840255, 1.3011433808740398, 0.13322688523123452, 0.666283949395477, 1.0973890317554909, 2.3828763640429833, 4.522745800256989, 7.516996975395092, 6.466651425897698, 6.270687761325369, 8.018640526465232, 11.710508553309563, 12.447314692307456, 10.22905660744346, 9.954714952291658, 11.96917671275938, 11.373462403280271, 13.066550341412958, 12.149463377606542, 8.622199175845566, 11.843770059019858, 7.117237570430352, 9.139538998768387, 8.112716540908977, 8.935748514410752, 5.635799640656987, 3.111849113212104, 1.3638966400741723, 0.39194229424367444, 0.19598609397073144, 0.5094651513209102, 1.7244114233811296, 3.448852922961255, 5.682789175558147, 8.426220911176635, 7.963759931353728, 9.194386305659643, 7.219120548528025, 11.835921047087723, 8.347850512647396, 12.016208879942612, 13.043039513856117, 11.428341246380183, 12.071092395073437, 10.072315810384978, 10.150704313034003, 12.30625790302051, 11.639998262785873, 8.15192422432236, 6.741015273196333, 6.435316698574874, 7.234827332450258, 4.240568565261922, 2.351519152571395, 1.5676793863806082, 0.6584259584039319, 0.3762412773595994, 1.53632217490902, 2.8218170262462614, 4.232725393368426, 6.983994168839839, 6.1766432830902795, 6.709652513688036, 8.58302186063311, 11.796750739921634, 12.290566887202607, 10.064471470483754, 10.017441639315978, 12.149478561707006, 11.561601584082752, 13.168468359742471, 12.071097067104349, 8.269488874176115, 11.561601584082752, 7.250498492136785, 9.3433411632033, 8.042170626149584, 8.245966950545858, 5.0557506508257655, 3.3705003365498665, 1.9360776378476774, 0.7524825547191988, 0.18028507708665636, 0.8622252028195257, 1.2933377312288057, 2.7591145753822968, 5.259555735279999, 8.794660772919014, 8.465450786736852, 9.170905262299867, 6.968323009153311, 11.65566358243376, 8.53598735743442, 12.306234542865951, 13.168443831580182, 11.420482890386223, 11.961328868834972, 9.8920034493678, 10.111486117551067, 12.619775705377041, 11.992715572501693, 8.230306302928883, 6.23152621421724, 5.99637589037063, 7.524855331389052, 4.765746596045395, 2.6180297539098794, 1.0817045129805738, 0.15677092800783965, 0.15677092800783965, 1.0817029799704307, 2.6180250818789674, 4.7657375439855025, 7.524840147288588, 5.996353698223798, 6.231501102051088, 8.230282358770458, 11.992698052385773, 12.619768697330674, 10.111493125597436, 9.89202096948372, 11.96135339699726, 11.420508586556238, 13.168467191734743], "log": [1.634792079759139, 1.427817358082488, 1.1359168090586433, 0.5813807705279748, 0.6813844477690872, 0.9123327755668514, 0.9144107228285002, 0.9920294558895574, 0.9081474723837575, 1.1084270371146798, 0.9707117586997092, 1.1144845094031852, 1.1474611178527676, 1.0944131692196661, 1.1163118845451514, 1.044238464463794, 1.0473022996356462, 1.1240559367241303, 1.1017470142578725, 0.9615124156125308, 0.888797924330256, 0.8712994715149018, 0.9156544973308819, 0.7193784074723832, 0.5252417055534969, 0.4095407945453676, 0.21969608690500161, 0.13869457942278843, 0.4042044187279388, 0.5822698908838876, 0.7187279441273892, 0.9022202110897348, 0.8559213600492864, 0.8870348041484044, 0.9815024788548629, 1.107099710674437, 1.1235435054523888, 1.0439306733075937, 1.0420807586791057, 1.1189085313608873, 1.099045014782246, 1.1513229046677411, 1.116312039776009, 0.9670557875161478, 1.099045014782246, 0.9164801892582827, 1.0146608496239007, 0.9562726979311967, 0.9659523367311764, 0.7821679845237404, 0.6405311580148866, 0.46776753531863635, 0.24365370342791332, 0.07198691616434415, 0.27003219996849676, 0.3604680163559234, 0.5750855629306169, 0.7965435107562531, 0.99098939928935, 0.9761413018212565, 1.0073596090608758, 0.9013669306176486, 1.1022849217292559, 0.9793656666201431, 1.1240551742862457, 1.1513221528253765, 1.0941384809092658, 1.1126495301469483, 1.03710777020384, 1.0457721480038076, 1.134169955541586, 1.113699931280639, 0.9652161131022485, 0.8592299648551177, 0.8448731345299585, 0.9306870176571986, 0.7608555512749556, 0.5584721340842542, 0.3184190837291044, 0.06324736538922825, 0.06324736538922825, 0.31841876390557194, 0.5584715732711343, 0.760854869444306, 0.9306862441101224, 0.8448717569678681, 0.8592284567233899, 0.9652149865059013, 1.1136993456528883, 1.134169732075597, 1.0457724219145046, 1.0371084687790453, 1.1126503520098578, 1.0941393794003629, 1.151322868865753, 1.1240556317491373, 0.9793660655765326, 1.1022850419740549, 0.9013669942771254, 1.0073596090608758, 0.9761413018212565, 0.99098939928935, 0.7965435107562531, 0.5750855629306169, 0.3604680163559234, 0.27003219996849676, 0.07198691616434415, 0.24365370342791332, 0.46776753531863635, 0.6405311580148866, 0.7821679845237404, 0.9659522818684081, 0.9562725015836533, 1.0146604818078937, 0.916479420729326, 1.0990442475285356, 0.9670545288727403, 1.1163111083900314, 1.1513220812212739, 1.0990442475285356, 1.1189080298676288, 1.042080390347115, 1.04393048992444, 1.1235434672855191, 1.107099710674437, 0.9815024788548629, 0.8870348041484044, 0.8559213600492864, 0.9022202110897348, 0.7187279441273892, 0.5822698908838876, 0.4042044187279388, 0.13869457942278843, 0.21969608690500161, 0.4095407945453676, 0.5252417055534969, 0.7193782864789797, 0.9156542817334008, 0.871298959842403, 0.8887971052196941, 0.9615113347940458, 1.1017460912374486, 1.1240550217985084, 1.0473012533359793, 1.044237594010247, 1.1163113800444813, 1.0944128427017557, 1.1474609733657013, 1.1144844704318273, 0.9707117586997092, 1.1084270371146798, 0.9148254119389472, 1.0083612857366424, 0.9524906411093829, 0.9743382862583985, 0.8249592406412444, 0.6482506708666034, 0.4352772309668509, 0.17883084115496126, 0.07771798524148209, 0.14361656187272973, 0.37362711537699134, 0.6140371695811689, 0.8218937614711421, 0.9972012541637258, 0.9596489190040204, 1.0060193605828027, 0.9094097566192243, 1.1086934301993607, 0.9832753703814997, 1.1189085313608873, 1.1481878932904963, 1.0924913660466034, 1.112912446927368, 1.0396010814624566, 1.0503432711865077, 1.1286355305758087, 1.104162807498177, 0.9551406267836295, 0.8615745873468978, 0.8731245863444748, 0.9302850636107564, 0.7421524593264729, 0.5292815147043901, 0.3216712531848682, 0.22173926924000073, 0.05433061961178864, 0.3619499070920784, 0.5840477123967316, 0.7590795183211223, 0.9039220754232623, 0.8419425520590349, 0.8717561886656604, 0.9775768965950732, 1.117611897122962, 1.1266060308551116, 1.042080390347115, 1.0377330109464549, 1.115790500427142, 1.099044772491747, 1.1561016090344685, 1.123287292039616, 0.9747000586488722, 1.0995865595512124, 0.9039220754232623, 1.018918079490986, 0.9670550761094527, 0.9725290239851342, 0.7707764559034325, 0.5686981032445944, 0.44759533242006716, 0.279075865484004, 6.046333215288689e-14, 0.279075865484004, 0.44759533242006716, 0.5686981032445944, 0.7707764559034325, 0.9725290239851342, 0.9670550761094527, 1.018918079490986, 0.9039220754232623, 1.0995865595512124, 0.9747000586488722, 1.123287292039616, 1.1561016090344685, 1.099044772491747, 1.115790500427142, 1.0377330109464549, 1.042080390347115, 1.1266060308551116, 1.117611897122962, 0.9775768431813123, 0.8717559501362127, 0.8419420046032963, 0.9039212527039049, 0.7590778398844905, 0.58404450689762, 0.36194367976486425, 0.054316869386225146, 0.2217490109650026, 0.3216789925419181, 0.5292861256641006, 0.7421550540717073, 0.930286493016395, 0.8731258771428104, 0.8615754943282106, 0.9551410767490738, 1.104162927224161, 1.1286355682977887, 1.0503432711865077, 1.0396010814624566, 1.1129124078146857, 1.0924912430593854, 1.1481876047994986, 1.1189080298676288, 0.983274342389387, 1.1086925218249581, 0.9094082568229772, 1.0060182099438337, 0.9596478613704232, 0.997200590462748, 0.8218932645930243, 0.6140371695811689, 0.37362848336539933, 0.1436212310999585, 0.07772613003124933, 0.1788230910167956, 0.4352726925990414, 0.64824804840883, 0.8249577604898509, 0.9743376135883499, 0.952490216684476, 1.0083610867019268, 0.9148253502219701, 1.1084270371146798, 0.9707117586997092, 1.1144845094031852, 1.1474611178527676, 1.0944131692196661, 1.1163118845451514, 1.044238464463794, 1.0473022996356462, 1.1240559367241303, 1.1017470142578725, 0.9615124156125308, 0.888797924330256, 0.8712994715149018, 0.9156544973308819, 0.7193784074723832, 0.5252417055534969, 0.4095407945453676, 0.21969608690500161, 0.13869457942278843, 0.4042044187279388, 0.5822698908838876, 0.7187279441273892, 0.9022202110897348, 0.8559213600492864, 0.8870348041484044, 0.9815024788548629, 1.107099710674437, 1.1235435054523888, 1.0439306733075937, 1.0420807586791057, 1.1189085313608873, 1.099045014782246, 1.1513229046677411, 1.116312039776009, 0.9670557875161478, 1.099045014782246, 0.9164801892582827, 1.0146608496239007, 0.9562726979311967, 0.9659523367311764, 0.7821679845237404, 0.6405311580148866, 0.46776753531863635, 0.24365370342791332, 0.07198691616434415, 0.27003219996849676, 0.3604680163559234, 0.5750855629306169, 0.7965435107562531, 0.99098939928935, 0.9761413018212565, 1.0073596090608758, 0.9013669306176486, 1.1022849217292559, 0.9793656666201431, 1.1240551742862457, 1.1513221528253765, 1.0941384809092658, 1.1126495301469483, 1.03710777020384, 1.0457721480038076, 1.134169955541586, 1.113699931280639, 0.9652161131022485, 0.8592299648551177, 0.8448731345299585, 0.9306870176571986, 0.7608555512749556, 0.5584721340842542, 0.3184190837291044, 0.06324736538922825, 0.06324736538922825, 0.31841876390557194, 0.5584715732711343, 0.760854869444306, 0.9306862441101224, 0.8448717569678681, 0.8592284567233899, 0.9652149865059013, 1.1136993456528883, 1.134169732075597, 1.0457724219145046, 1.0371084687790453, 1.1126503520098578, 1.0941393794003629, 1.151322868865753], "missing": [false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false]}, {"level": 2, "origin_ns": 120000000000, "period_ns": 300000000000, "first_slot": 0, "norms": [66.45190283980686, 19.344333749685905, 70.61788272356087, 70.12432003395686, 34.21783059056437, 12.802685715581283, 40.171640191299765, 67.28417375443709, 73.17261463466743, 57.44507287909343, 8.249643838873592, 43.06020272716045, 64.34717160208093, 70.83081053237461, 55.064504936323864, 30.17770587551744, 20.227314887834826, 65.58101291765816, 77.07728315748317, 62.14083303608114, 28.218120622134176, 0.783842175206726, 46.47862028874943, 77.512781846913, 76.6418125002388, 42.57151763782856, 3.7304858663550755, 31.890535480268724, 64.10770198565619, 76.08297686676345, 63.30934534341607, 16.462978989514685, 34.866208032483385, 58.54095846590154, 71.07028949286118, 61.48039007433193, 38.393504938460744, 12.251082385957687, 59.883676789851684, 74.7185055668871, 65.68743243777138, 36.90565464626068, 8.360942127266643, 39.8377535021747, 75.35714416037007, 78.20944706432284, 49.05265235955342, 5.327186886754177, 23.181260160293295, 60.00224359033606, 77.89742080783496, 68.244603149014, 24.589230403975684, 26.222278072858444, 52.05259144032493, 70.29856342681937, 66.85110452108148, 46.21735097608937, 4.122371731225391, 53.40247198766315, 71.249293685223, 68.51554356566187, 44.80933634811332, 17.37505870419118, 32.39372255355141, 72.3597186322292, 78.61595580194381, 54.8903176078323, 14.31226211952981, 14.31226211952981, 54.89035965611051, 78.61592776975833], "log": [1.8289942057673234, 1.3084434718460833, 1.8550214775936977, 1.8520181274606038, 1.5467626000252168, 1.1399635992977433, 1.6145981687181998, 1.83432005876845, 1.8702435884548856, 1.7667479045206815, 0.9661250103833772, 1.6440464910690513, 1.8152267949128635, 1.8563107670006338, 1.748687991575906, 1.493844155680963, 1.3268950623173286, 1.8233503979279382, 1.8925246928471398, 1.800310307372269, 1.4656522776596732, 0.25135642769208255, 1.6764980900279425, 1.8949403654548214, 1.8900956651715572, 1.639202687093334, 0.6749057492452641, 1.5170709441495072, 1.8136323669401788, 1.8869584783218218, 1.8082740885722086, 1.242118331485885, 1.5546854631654892, 1.7748158214612224, 1.8577562665425789, 1.7957437322425005, 1.5954246227922602, 1.1222513541256336, 1.7845008717737967, 1.879202033838256, 1.8240439967772732, 1.5787040014848568, 0.9713195602853892, 1.611061843394211, 1.8828496769428706, 1.8987769816302928, 1.6994270962928002, 0.8012106624483056, 1.3834789295438266, 1.7853458081416544, 1.8970628061595647, 1.840385930603807, 1.4080572246784082, 1.4349244659471838, 1.724706602577523, 1.8530807794719146, 1.8315569217600371, 1.6741016183052218, 0.7094710920867071, 1.7356186340035133, 1.858833605752329, 1.842081923007969, 1.660954000083439, 1.2642287352319097, 1.5236648345785682, 1.8654576569489796, 1.901000113244218, 1.7473365775875824, 1.1850393548692262, 1.1850393548692262, 1.7473369043226792, 1.9009999603323364], "missing": [false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false]}, {"level": 3, "origin_ns": 420000000000, "period_ns": 900000000000, "first_slot": 0, "norms": [109.76010631183733, 62.754121189835686, 128.51896450778776, 13.648198333823807, 135.9273198283671, 38.80173999150369, 120.6775492979146, 84.8575741869348, 84.71726375458604, 116.24734270593325, 34.608001236086125, 128.06836581445037, 21.433957975457925, 118.17068701553224, 73.98306716493869, 88.02562228398138, 113.74340511490179, 43.20535338353402, 134.38989461615998, 9.095790101308552, 132.1859387859253, 59.89820213395704, 107.40800038138359, 100.33653586580569], "log": [2.044383363926391, 1.8045082636495986, 2.1123333636147468, 1.1657842115982635, 2.136490107498389, 1.5999020583096373, 2.0852104540272673, 1.9337786137950481, 1.9330682991494095, 2.0691030086474402, 1.5515475963504426, 2.110819811315834, 1.3509059019939647, 2.0761694430471613, 1.8749632011637385, 1.9495150180503604, 2.0597277338213846, 1.64547486672792, 2.131586250196836, 1.004140312701261, 2.12445837626048, 1.7846044713713454, 2.0350613338008654, 2.0057660540884656], "missing": [false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false, false]}, {"level": 4, "origin_ns": 1320000000000, "period_ns": 1800000000000, "first_slot": 0, "norms": [4.338285843797696, 10.968284026461491, 14.850754562406648, 16.684906297872647, 13.895292704696908, 11.408277209628661, 3.950407705444068, 1.298787217284739, 8.571307911129033, 13.147431372553527, 15.506246339396887, 16.457247575593406], "log": [0.7274018248018741, 1.0780318871431527, 1.2000499412849586, 1.2476027630806736, 1.1730490418770563, 1.0937114873577118, 0.694640968010958, 0.3614987735155418, 0.9809712878055542, 1.1506775959034534, 1.2176483222371843, 1.2419757710441752], "missing": [false, false, false, false, false, false, false, false, false, false, false, false]}, {"level": 5, "origin_ns": 3120000000000, "period_ns": 3600000000000, "first_slot": 0, "norms": [1.217880124971739, 0.19768297194794052, 0.5083045166416967, 0.8721373544022015, 0.6801978414552344, 0.07505150457013889], "log": [0.3459380691034026, 0.07834187501948227, 0.17848903155103057, 0.27233770875604657, 0.22536042243629323, 0.03142927133513901], "missing": [false, false, false, false, false, false]}, {"level": 6, "origin_ns": 6720000000000, "period_ns": 7200000000000, "first_slot": 0, "norms": [5.180235746467898, 16.113386100471256, 47.70915380644097], "log": [0.7910050416644457, 1.2333359487144082, 1.6876105849118348], "missing": [false, false, false]}, {"level": 7, "origin_ns": 13920000000000, "period_ns": 14400000000000, "first_slot": 0, "norms": [66.29851072090455], "log": [1.8280054536318577], "missing": [false]}, {"level": 8, "origin_ns": 28320000000000, "period_ns": 43200000000000, "first_slot": 0, "norms": [], "log": [], "missing": []}, {"level": 9, "origin_ns": 71520000000000, "period_ns": 86400000000000, "first_slot": 0, "norms": [], "log": [], "missing": []}], "epsilon": 1.0, "norm": "l2"};

export const FRAME_TIMES: Record<string, string> = {
 "0:0": "1970-01-01T00:00:00Z/1970-01-01T00:01:00Z",
 "0:1441": "1970-01-02T00:01:00Z/1970-01-02T00:02:00Z",
 "2:7": "1970-01-01T01:52:00Z/1970-01-01T02:07:00Z",
 "5:3": "1970-01-01T07:52:00Z/1970-01-01T09:52:00Z",
 "8:1": "1970-01-02T19:52:00Z/1970-01-03T19:52:00Z"
};
