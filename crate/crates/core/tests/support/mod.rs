//! Appendix tables of extremal association values, as printed.

pub const RHO_L_MAX: [[&str; 9]; 9] = [
    [
        "0.0748", "0.0853", "0.0881", "0.0659", "0.0473", "0.0161", "0.0047", "0.0000", "0.0000",
    ],
    [
        "0.1481", "0.1646", "0.1619", "0.1130", "0.0777", "0.0239", "0.0062", "0.0000", "0.0000",
    ],
    [
        "0.2180", "0.2351", "0.2187", "0.1414", "0.0927", "0.0254", "0.0059", "0.0000", "0.0000",
    ],
    [
        "0.2812", "0.2930", "0.2558", "0.1520", "0.0944", "0.0227", "0.0047", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.3333", "0.2707", "0.1463", "0.0856", "0.0178", "0.0031", "0.0000", "0.0000",
    ],
    [
        "0.3673", "0.3499", "0.2613", "0.1270", "0.0696", "0.0122", "0.0018", "0.0000", "0.0000",
    ],
    [
        "0.3728", "0.3345", "0.2269", "0.0979", "0.0498", "0.0072", "0.0009", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.2778", "0.1684", "0.0636", "0.0297", "0.0035", "0.0003", "0.0000", "0.0000",
    ],
    [
        "0.2231", "0.1690", "0.0901", "0.0293", "0.0125", "0.0011", "0.0001", "0.0000", "0.0000",
    ],
];

pub const RHO_U_MAX: [[&str; 9]; 9] = [
    [
        "0.0748", "0.0643", "0.0386", "0.0130", "0.0055", "0.0005", "0.0000", "0.0000", "0.0000",
    ],
    [
        "0.1481", "0.1317", "0.0843", "0.0313", "0.0141", "0.0014", "0.0001", "0.0000", "0.0000",
    ],
    [
        "0.2180", "0.2009", "0.1382", "0.0573", "0.0278", "0.0034", "0.0003", "0.0000", "0.0000",
    ],
    [
        "0.2812", "0.2695", "0.2006", "0.0942", "0.0499", "0.0078", "0.0010", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.3333", "0.2707", "0.1463", "0.0856", "0.0178", "0.0031", "0.0000", "0.0000",
    ],
    [
        "0.3673", "0.3848", "0.3442", "0.2179", "0.1431", "0.0407", "0.0100", "0.0000", "0.0000",
    ],
    [
        "0.3728", "0.4110", "0.4094", "0.3097", "0.2317", "0.0933", "0.0331", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.3889", "0.4370", "0.4042", "0.3497", "0.2073", "0.1095", "0.0011", "0.0000",
    ],
    [
        "0.2231", "0.2772", "0.3567", "0.4140", "0.4216", "0.3828", "0.3121", "0.0434", "0.0007",
    ],
];

pub const RHO_C_MAX: [[&str; 9]; 9] = [
    [
        "0.0748", "0.0748", "0.0633", "0.0395", "0.0264", "0.0083", "0.0023", "0.0000", "0.0000",
    ],
    [
        "0.1481", "0.1481", "0.1231", "0.0722", "0.0459", "0.0126", "0.0032", "0.0000", "0.0000",
    ],
    [
        "0.2180", "0.2180", "0.1784", "0.0994", "0.0602", "0.0144", "0.0031", "0.0000", "0.0000",
    ],
    [
        "0.2812", "0.2812", "0.2282", "0.1231", "0.0721", "0.0153", "0.0028", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.3333", "0.2707", "0.1463", "0.0856", "0.0178", "0.0031", "0.0000", "0.0000",
    ],
    [
        "0.3673", "0.3673", "0.3028", "0.1724", "0.1064", "0.0264", "0.0059", "0.0000", "0.0000",
    ],
    [
        "0.3728", "0.3728", "0.3181", "0.2038", "0.1407", "0.0503", "0.0170", "0.0000", "0.0000",
    ],
    [
        "0.3333", "0.3333", "0.3027", "0.2339", "0.1897", "0.1054", "0.0549", "0.0006", "0.0000",
    ],
    [
        "0.2231", "0.2231", "0.2234", "0.2217", "0.2170", "0.1920", "0.1561", "0.0217", "0.0004",
    ],
];

pub const TAU_MAX: [[&str; 9]; 9] = [
    [
        "0.0499", "0.0499", "0.0378", "0.0195", "0.0117", "0.0031", "0.0008", "0.0000", "0.0000",
    ],
    [
        "0.0988", "0.0988", "0.0760", "0.0407", "0.0253", "0.0074", "0.0021", "0.0000", "0.0000",
    ],
    [
        "0.1453", "0.1453", "0.1136", "0.0636", "0.0411", "0.0132", "0.0042", "0.0000", "0.0000",
    ],
    [
        "0.1875", "0.1875", "0.1494", "0.0881", "0.0594", "0.0213", "0.0075", "0.0000", "0.0000",
    ],
    [
        "0.2222", "0.2222", "0.1811", "0.1133", "0.0799", "0.0324", "0.0130", "0.0001", "0.0000",
    ],
    [
        "0.2449", "0.2449", "0.2049", "0.1372", "0.1020", "0.0475", "0.0220", "0.0002", "0.0000",
    ],
    [
        "0.2485", "0.2485", "0.2147", "0.1554", "0.1227", "0.0667", "0.0362", "0.0009", "0.0000",
    ],
    [
        "0.2222", "0.2222", "0.1996", "0.1583", "0.1337", "0.0867", "0.0562", "0.0041", "0.0001",
    ],
    [
        "0.1488", "0.1488", "0.1402", "0.1236", "0.1129", "0.0896", "0.0710", "0.0176", "0.0017",
    ],
];

pub const RHO_L_MIN: [[&str; 7]; 9] = [
    [
        "-0.0083", "-0.0080", "-0.0070", "-0.0057", "-0.0023", "-0.0010", "-0.0001",
    ],
    [
        "-0.0370", "-0.0343", "-0.0289", "-0.0227", "-0.0047", "-0.0020", "-0.0001",
    ],
    [
        "-0.0934", "-0.0824", "-0.0449", "-0.0274", "-0.0073", "-0.0030", "-0.0002",
    ],
    [
        "-0.1875", "-0.0977", "-0.0590", "-0.0467", "-0.0102", "-0.0040", "-0.0002",
    ],
    [
        "-0.3333", "-0.1111", "-0.0954", "-0.0484", "-0.0137", "-0.0048", "-0.0003",
    ],
    [
        "-0.2449", "-0.1603", "-0.0865", "-0.0706", "-0.0152", "-0.0056", "-0.0003",
    ],
    [
        "-0.1598", "-0.1843", "-0.1123", "-0.0627", "-0.0162", "-0.0063", "-0.0003",
    ],
    [
        "-0.0833", "-0.0926", "-0.0936", "-0.0883", "-0.0160", "-0.0067", "-0.0004",
    ],
    [
        "-0.0248", "-0.0263", "-0.0254", "-0.0228", "-0.0121", "-0.0065", "-0.0003",
    ],
];

pub const RHO_U_MIN: [[&str; 7]; 9] = [
    [
        "-0.0083", "-0.0086", "-0.0081", "-0.0071", "-0.0035", "-0.0018", "-0.0001",
    ],
    [
        "-0.0370", "-0.0398", "-0.0389", "-0.0354", "-0.0068", "-0.0031", "-0.0002",
    ],
    [
        "-0.0934", "-0.1044", "-0.0627", "-0.0357", "-0.0097", "-0.0040", "-0.0002",
    ],
    [
        "-0.1875", "-0.1211", "-0.0661", "-0.0547", "-0.0120", "-0.0045", "-0.0003",
    ],
    [
        "-0.3333", "-0.1111", "-0.0954", "-0.0484", "-0.0137", "-0.0048", "-0.0003",
    ],
    [
        "-0.2449", "-0.1254", "-0.0759", "-0.0591", "-0.0127", "-0.0049", "-0.0003",
    ],
    [
        "-0.1598", "-0.1352", "-0.0726", "-0.0443", "-0.0114", "-0.0046", "-0.0003",
    ],
    [
        "-0.0833", "-0.0741", "-0.0600", "-0.0453", "-0.0093", "-0.0038", "-0.0002",
    ],
    [
        "-0.0248", "-0.0233", "-0.0199", "-0.0158", "-0.0058", "-0.0025", "-0.0001",
    ],
];
