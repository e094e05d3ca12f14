"""Edition, country and language codes.

Country codes are ISO 3166-1 alpha-2 (with UK for the United Kingdom); each
country maps to the edition language most spoken there, or WR when that
language is not one of the 24 editions.
"""

EDITIONS: tuple[str, ...] = (
    "AR", "DA", "DE", "EL", "EN", "ES", "FA", "FR", "HE", "HI", "HU", "IT",
    "JA", "KO", "MS", "NL", "PL", "PT", "RU", "SV", "TH", "TR", "VI", "ZH",
)

OTHER_LANGUAGE = "WR"

# the 24 editions followed by WR; also the node order of the culture network
CULTURES: tuple[str, ...] = EDITIONS + (OTHER_LANGUAGE,)

EDITION_LANGUAGES: dict[str, str] = {
    "AR": "Arabic", "DA": "Danish", "DE": "German", "EL": "Greek",
    "EN": "English", "ES": "Spanish", "FA": "Persian", "FR": "French",
    "HE": "Hebrew", "HI": "Hindi", "HU": "Hungarian", "IT": "Italian",
    "JA": "Japanese", "KO": "Korean", "MS": "Malaysian", "NL": "Dutch",
    "PL": "Polish", "PT": "Portuguese", "RU": "Russian", "SV": "Swedish",
    "TH": "Thai", "TR": "Turkish", "VI": "Vietnamese", "ZH": "Chinese",
}

# CC -> (country name, language code)
COUNTRIES: dict[str, tuple[str, str]] = {
    "AE": ("United Arab Emirates", "AR"),
    "AF": ("Afghanistan", "FA"),
    "AL": ("Albania", "WR"),
    "AM": ("Armenia", "WR"),
    "AO": ("Angola", "PT"),
    "AR": ("Argentina", "ES"),
    "AT": ("Austria", "DE"),
    "AU": ("Australia", "EN"),
    "AZ": ("Azerbaijan", "TR"),
    "BD": ("Bangladesh", "WR"),
    "BE": ("Belgium", "NL"),
    "BF": ("Burkina Faso", "FR"),
    "BG": ("Bulgaria", "WR"),
    "BH": ("Bahrain", "AR"),
    "BJ": ("Benin", "FR"),
    "BN": ("Brunei", "MS"),
    "BR": ("Brazil", "PT"),
    "BS": ("Bahamas", "EN"),
    "BT": ("Bhutan", "WR"),
    "BY": ("Belarus", "RU"),
    "CA": ("Canada", "EN"),
    "CF": ("Central African Republic", "FR"),
    "CH": ("Switzerland", "DE"),
    "CI": ("Ivory Coast", "FR"),
    "CL": ("Chile", "ES"),
    "CN": ("China", "ZH"),
    "CO": ("Colombia", "ES"),
    "CR": ("Costa Rica", "ES"),
    "CU": ("Cuba", "ES"),
    "CY": ("Cyprus", "EL"),
    "CZ": ("Czech Republic", "WR"),
    "DE": ("Germany", "DE"),
    "DK": ("Denmark", "DA"),
    "DO": ("Dominican Republic", "ES"),
    "DZ": ("Algeria", "AR"),
    "EC": ("Ecuador", "ES"),
    "EE": ("Estonia", "WR"),
    "EG": ("Egypt", "AR"),
    "ES": ("Spain", "ES"),
    "ET": ("Ethiopia", "EN"),
    "FI": ("Finland", "WR"),
    "FJ": ("Fiji", "EN"),
    "FO": ("Faroe Islands", "DA"),
    "FR": ("France", "FR"),
    "GE": ("Georgia", "WR"),
    "GH": ("Ghana", "EN"),
    "GL": ("Greenland", "DA"),
    "GR": ("Greece", "EL"),
    "GU": ("Guam", "EN"),
    "GY": ("Guyana", "EN"),
    "HK": ("Hong Kong", "ZH"),
    "HN": ("Honduras", "ES"),
    "HR": ("Croatia", "WR"),
    "HT": ("Haiti", "FR"),
    "HU": ("Hungary", "HU"),
    "ID": ("Indonesia", "WR"),
    "IE": ("Ireland", "EN"),
    "IL": ("Israel", "HE"),
    "IN": ("India", "HI"),
    "IQ": ("Iraq", "AR"),
    "IR": ("Iran", "FA"),
    "IS": ("Iceland", "WR"),
    "IT": ("Italy", "IT"),
    "JM": ("Jamaica", "EN"),
    "JO": ("Jordan", "AR"),
    "JP": ("Japan", "JA"),
    "KE": ("Kenya", "EN"),
    "KG": ("Kyrgyzstan", "WR"),
    "KH": ("Cambodia", "WR"),
    "KM": ("Comoros", "FR"),
    "KP": ("North Korea", "KO"),
    "KR": ("South Korea", "KO"),
    "KW": ("Kuwait", "AR"),
    "KZ": ("Kazakhstan", "WR"),
    "LA": ("Laos", "WR"),
    "LB": ("Lebanon", "AR"),
    "LK": ("Sri Lanka", "WR"),
    "LR": ("Liberia", "EN"),
    "LT": ("Lithuania", "WR"),
    "LV": ("Latvia", "WR"),
    "LY": ("Libya", "AR"),
    "MA": ("Morocco", "AR"),
    "MC": ("Monaco", "FR"),
    "MD": ("Moldova", "WR"),
    "MK": ("Macedonia", "WR"),
    "MM": ("Myanmar", "WR"),
    "MN": ("Mongolia", "WR"),
    "MT": ("Malta", "EN"),
    "MW": ("Malawi", "EN"),
    "MX": ("Mexico", "ES"),
    "MY": ("Malaysia", "MS"),
    "NG": ("Nigeria", "EN"),
    "NL": ("Netherlands", "NL"),
    "NO": ("Norway", "WR"),
    "NP": ("Nepal", "WR"),
    "NZ": ("New Zealand", "EN"),
    "OM": ("Oman", "AR"),
    "PA": ("Panama", "ES"),
    "PE": ("Peru", "ES"),
    "PG": ("Papua New Guinea", "EN"),
    "PH": ("Philippines", "EN"),
    "PK": ("Pakistan", "HI"),
    "PL": ("Poland", "PL"),
    "PR": ("Puerto Rico", "ES"),
    "PS": ("State of Palestine", "AR"),
    "PT": ("Portugal", "PT"),
    "PY": ("Paraguay", "ES"),
    "QA": ("Qatar", "AR"),
    "RO": ("Romania", "WR"),
    "RS": ("Serbia", "WR"),
    "RU": ("Russia", "RU"),
    "RW": ("Rwanda", "EN"),
    "SA": ("Saudi Arabia", "AR"),
    "SD": ("Sudan", "AR"),
    "SE": ("Sweden", "SV"),
    "SG": ("Singapore", "ZH"),
    "SI": ("Slovenia", "WR"),
    "SK": ("Slovakia", "WR"),
    "SO": ("Somalia", "WR"),
    "SR": ("Suriname", "NL"),
    "SV": ("El Salvador", "ES"),
    "SY": ("Syria", "AR"),
    "SZ": ("Swaziland", "EN"),
    "TH": ("Thailand", "TH"),
    "TJ": ("Tajikistan", "WR"),
    "TL": ("Timor-Leste", "PT"),
    "TN": ("Tunisia", "AR"),
    "TR": ("Turkey", "TR"),
    "TW": ("Taiwan", "ZH"),
    "TZ": ("Tanzania", "WR"),
    "UA": ("Ukraine", "WR"),
    "UG": ("Uganda", "EN"),
    "UK": ("United Kingdom", "EN"),
    "US": ("United States", "EN"),
    "UY": ("Uruguay", "ES"),
    "UZ": ("Uzbekistan", "WR"),
    "VA": ("Holy See", "IT"),
    "VE": ("Venezuela", "ES"),
    "VN": ("Vietnam", "VI"),
    "YE": ("Yemen", "AR"),
    "ZA": ("South Africa", "WR"),
    "ZW": ("Zimbabwe", "EN"),
}


def country_language(cc: str) -> str:
    return COUNTRIES[cc][1]


def roman(n: int) -> str:
    """Roman numeral for a positive integer (century labels in reports)."""
    if n <= 0:
        raise ValueError(f"no roman numeral for {n}")
    out = []
    for value, sym in ((1000, "M"), (900, "CM"), (500, "D"), (400, "CD"), (100, "C"),
                       (90, "XC"), (50, "L"), (40, "XL"), (10, "X"), (9, "IX"),
                       (5, "V"), (4, "IV"), (1, "I")):
        while n >= value:
            out.append(sym)
            n -= value
    return "".join(out)
