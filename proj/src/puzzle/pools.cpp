#include "cryptogame/puzzle/puzzle.hpp"

namespace cryptogame::puzzle {

const std::vector<std::string>& default_plaintext_pool() {
    static const std::vector<std::string> pool{
        "THE PACKAGE WILL BE LEFT UNDER THE THIRD BENCH IN THE NORTH PARK AT DAWN",
        "OUR CONTACT IN THE EMBASSY HAS GONE SILENT SINCE THE LAST FULL MOON",
        "MEET THE COURIER AT THE OLD TRAIN STATION BEFORE THE CLOCK STRIKES NINE",
        "THE ENEMY HAS MOVED THEIR HEADQUARTERS TO A WAREHOUSE NEAR THE HARBOR",
        "DO NOT TRUST THE MAN IN THE GREY COAT HE WORKS FOR THE OTHER SIDE",
        "THE MICROFILM IS HIDDEN INSIDE THE HOLLOW HEEL OF THE LEFT BOOT",
        "ABORT THE MISSION IF YOU SEE A RED SCARF IN THE CAFE WINDOW",
        "THE SAFE HOUSE HAS BEEN COMPROMISED SO MOVE TO THE BACKUP LOCATION TONIGHT",
        "OUR AGENT WILL SIGNAL WITH THREE SHORT FLASHES FROM THE LIGHTHOUSE",
        "THE NEGOTIATIONS WILL TAKE PLACE ON THE TENTH FLOOR OF THE GRAND HOTEL",
        "BURN THIS MESSAGE AFTER READING AND WAIT FOR FURTHER INSTRUCTIONS",
        "THE DOUBLE AGENT WILL BE EXPOSED AT THE CONFERENCE NEXT WEEK",
        "THE PLANS FOR THE NEW RADAR ARE LOCKED IN THE MINISTER OFFICE",
        "A BOAT WILL COLLECT YOU FROM THE EASTERN PIER AT MIDNIGHT ON FRIDAY",
        "THE PASSWORD FOR THE DROP POINT HAS BEEN CHANGED TO THE NAME OF A RIVER",
        "WATCH THE TRAIN FROM THE CAPITAL AND REPORT WHO STEPS OFF AT THE BORDER",
        "THE INFORMANT WANTS MORE MONEY BEFORE HE WILL SHARE THE NAMES",
        "THE CODE BOOKS ARE STORED IN THE BASEMENT OF THE CENTRAL LIBRARY",
        "WE HAVE LEARNED THAT THE SHIPMENT WILL ARRIVE THREE DAYS EARLY",
        "STAY AWAY FROM THE MARKET SQUARE THERE ARE WATCHERS ON EVERY CORNER",
        "THE AMBASSADOR WILL HOLD A PRIVATE DINNER WITH THE GENERAL ON SUNDAY",
        "OUR NETWORK IN THE NORTH HAS BEEN BROKEN AND TWO AGENTS ARE MISSING",
        "FOLLOW THE WOMAN WITH THE BLUE UMBRELLA AND NOTE WHERE SHE GOES",
        "THE RADIO OPERATOR WILL TRANSMIT ON THE USUAL FREQUENCY AT TEN",
        "THE KEY TO THE DEPOSIT BOX IS TAPED BEHIND THE PAINTING IN THE HALL",
        "HEADQUARTERS CONFIRMS THAT THE DEFECTOR IS GENUINE AND MUST BE PROTECTED",
        "THE BRIDGE WILL BE CLOSED FOR REPAIRS SO USE THE SOUTHERN ROUTE INSTEAD",
        "THE PHOTOGRAPHS SHOW THE NEW FACTORY IS BUILDING ROCKET ENGINES",
        "REPORT TO THE TAILOR ON THE MAIN STREET AND ASK FOR A GREEN SUIT",
        "THE ENEMY CIPHER CLERK HAS AGREED TO MEET US AT THE THEATRE",
        "YOUR COVER STORY IS THAT YOU ARE A TEACHER VISITING YOUR SISTER",
        "THE SUBMARINE WILL SURFACE NEAR THE ISLAND WHEN THE TIDE IS HIGH",
        "EVERY LETTER FROM THE PRISON IS READ BY THE GUARDS SO WRITE WITH CARE",
        "THE TREATY WILL BE SIGNED IN SECRET AT THE MOUNTAIN RETREAT",
    };
    return pool;
}

const std::vector<std::string>& default_codeword_pool() {
    static const std::vector<std::string> pool{
        "NIGHTINGALE",
        "BLUE HERON",
        "IRON CURTAIN",
        "SILVER FOX",
        "MIDNIGHT SUN",
        "GOLDEN GATE",
        "PAPER LANTERN",
        "NORTHERN STAR",
        "QUIET HARBOR",
        "RED FALCON",
        "WINTER ORCHARD",
        "GLASS TOWER",
    };
    return pool;
}

}  // namespace cryptogame::puzzle
