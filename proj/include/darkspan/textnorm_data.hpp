// Copyright 2026 The darkspan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Bundled tables for text normalization: the English stopword list, the
// irregular lemma dictionary and the language-profile training samples.

#pragma once

#include <string_view>
#include <utility>

namespace darkspan::textnorm::data {

// Standard English stopword list (apostrophe forms omitted: apostrophes are
// stripped before lookup, so only the split halves can occur).
inline constexpr std::string_view kStopwords[] = {
    "i", "me", "my", "myself", "we", "our", "ours", "ourselves", "you", "your",
    "yours", "yourself", "yourselves", "he", "him", "his", "himself", "she", "her", "hers",
    "herself", "it", "its", "itself", "they", "them", "their", "theirs", "themselves", "what",
    "which", "who", "whom", "this", "that", "these", "those", "am", "is", "are",
    "was", "were", "be", "been", "being", "have", "has", "had", "having", "do",
    "does", "did", "doing", "a", "an", "the", "and", "but", "if", "or",
    "because", "as", "until", "while", "of", "at", "by", "for", "with", "about",
    "against", "between", "into", "through", "during", "before", "after", "above", "below", "to",
    "from", "up", "down", "in", "out", "on", "off", "over", "under", "again",
    "further", "then", "once", "here", "there", "when", "where", "why", "how", "all",
    "any", "both", "each", "few", "more", "most", "other", "some", "such", "no",
    "nor", "not", "only", "own", "same", "so", "than", "too", "very", "s",
    "t", "can", "will", "just", "don", "should", "now", "d", "ll", "m",
    "o", "re", "ve", "y", "ain", "aren", "couldn", "didn", "doesn", "hadn",
    "hasn", "haven", "isn", "ma", "mightn", "mustn", "needn", "shan", "shouldn", "wasn",
    "weren", "won", "wouldn",
};

// Irregular surface forms and words the suffix rules would damage. Identity
// entries pin a word against the rules.
inline constexpr std::pair<std::string_view, std::string_view> kIrregularLemmas[] = {
    // irregular plurals
    {"men", "man"}, {"women", "woman"}, {"children", "child"}, {"feet", "foot"},
    {"teeth", "tooth"}, {"geese", "goose"}, {"mice", "mouse"}, {"lice", "louse"},
    {"oxen", "ox"}, {"people", "people"}, {"knives", "knife"}, {"lives", "life"},
    {"wives", "wife"}, {"wolves", "wolf"}, {"leaves", "leaf"}, {"halves", "half"},
    {"shelves", "shelf"}, {"thieves", "thief"}, {"criteria", "criterion"},
    {"phenomena", "phenomenon"}, {"indices", "index"}, {"matrices", "matrix"},
    {"vertices", "vertex"}, {"analyses", "analysis"}, {"crises", "crisis"},
    {"theses", "thesis"}, {"viruses", "virus"}, {"bonuses", "bonus"},
    {"statuses", "status"}, {"buses", "bus"}, {"aliases", "alias"},
    // words that look inflected but are not
    {"news", "news"}, {"series", "series"}, {"species", "species"},
    {"always", "always"}, {"perhaps", "perhaps"}, {"nothing", "nothing"},
    {"something", "something"}, {"anything", "anything"}, {"everything", "everything"},
    {"morning", "morning"}, {"evening", "evening"}, {"during", "during"},
    {"hundred", "hundred"}, {"kindred", "kindred"}, {"sacred", "sacred"},
    {"naked", "naked"}, {"wicked", "wicked"}, {"ceiling", "ceiling"},
    {"sterling", "sterling"}, {"wedding", "wedding"}, {"pudding", "pudding"},
    {"darling", "darling"}, {"duckling", "duckling"}, {"physics", "physics"},
    {"mathematics", "mathematics"}, {"economics", "economics"}, {"politics", "politics"},
    {"analytics", "analytics"}, {"statistics", "statistics"}, {"ethics", "ethics"},
    {"electronics", "electronics"}, {"logistics", "logistics"}, {"tactics", "tactics"},
    {"lens", "lens"}, {"goods", "goods"}, {"thanks", "thanks"}, {"afterwards", "afterwards"},
    {"towards", "towards"}, {"sometimes", "sometimes"}, {"whereas", "whereas"},
    // irregular verb forms
    {"bought", "buy"}, {"sold", "sell"}, {"paid", "pay"}, {"sent", "send"},
    {"made", "make"}, {"took", "take"}, {"taken", "take"}, {"gave", "give"},
    {"given", "give"}, {"got", "get"}, {"gotten", "get"}, {"found", "find"},
    {"kept", "keep"}, {"held", "hold"}, {"told", "tell"}, {"said", "say"},
    {"brought", "bring"}, {"thought", "think"}, {"knew", "know"}, {"known", "know"},
    {"went", "go"}, {"gone", "go"}, {"goes", "go"}, {"came", "come"},
    {"ran", "run"}, {"wrote", "write"}, {"written", "write"}, {"spoke", "speak"},
    {"spoken", "speak"}, {"stole", "steal"}, {"stolen", "steal"}, {"hid", "hide"},
    {"hidden", "hide"}, {"chose", "choose"}, {"chosen", "choose"}, {"began", "begin"},
    {"begun", "begin"}, {"broke", "break"}, {"broken", "break"}, {"built", "build"},
    {"caught", "catch"}, {"dealt", "deal"}, {"drew", "draw"}, {"drawn", "draw"},
    {"drove", "drive"}, {"driven", "drive"}, {"ate", "eat"}, {"eaten", "eat"},
    {"fell", "fall"}, {"fallen", "fall"}, {"felt", "feel"}, {"fought", "fight"},
    {"flew", "fly"}, {"flown", "fly"}, {"forgot", "forget"}, {"forgotten", "forget"},
    {"froze", "freeze"}, {"frozen", "freeze"}, {"grew", "grow"}, {"grown", "grow"},
    {"heard", "hear"}, {"hung", "hang"}, {"lost", "lose"}, {"meant", "mean"},
    {"met", "meet"}, {"rose", "rise"}, {"risen", "rise"}, {"sought", "seek"},
    {"shot", "shoot"}, {"shown", "show"}, {"sang", "sing"}, {"sung", "sing"},
    {"sat", "sit"}, {"slept", "sleep"}, {"spent", "spend"}, {"stood", "stand"},
    {"struck", "strike"}, {"swore", "swear"}, {"sworn", "swear"}, {"taught", "teach"},
    {"threw", "throw"}, {"thrown", "throw"}, {"understood", "understand"},
    {"woke", "wake"}, {"wore", "wear"}, {"worn", "wear"}, {"withdrew", "withdraw"},
    {"withdrawn", "withdraw"}, {"led", "lead"}, {"lent", "lend"}, {"bent", "bend"},
    {"fed", "feed"}, {"fled", "flee"}, {"laid", "lay"}, {"shook", "shake"},
    {"shaken", "shake"}, {"slid", "slide"}, {"spun", "spin"}, {"bitten", "bite"},
    {"forbade", "forbid"}, {"forbidden", "forbid"}, {"mistook", "mistake"},
    {"mistaken", "mistake"}, {"overtook", "overtake"}, {"undertook", "undertake"},
    {"seen", "see"}, {"saw", "see"}, {"done", "do"}, {"became", "become"},
    // forms the suffix rules would truncate
    {"used", "use"}, {"using", "use"}, {"traded", "trade"}, {"trading", "trade"},
    {"created", "create"}, {"creating", "create"}, {"updated", "update"},
    {"updating", "update"}, {"located", "locate"}, {"related", "relate"},
    {"generated", "generate"}, {"generating", "generate"}, {"activated", "activate"},
    {"priced", "price"}, {"pricing", "price"}, {"stored", "store"}, {"storing", "store"},
    {"secured", "secure"}, {"required", "require"}, {"requiring", "require"},
    {"received", "receive"}, {"receiving", "receive"}, {"purchased", "purchase"},
    {"purchasing", "purchase"}, {"released", "release"}, {"releasing", "release"},
    {"leaked", "leak"}, {"involved", "involve"}, {"served", "serve"},
    {"serving", "serve"}, {"changed", "change"}, {"changing", "change"},
    {"closed", "close"}, {"having", "have"}, {"giving", "give"}, {"coming", "come"},
    {"leaving", "leave"}, {"living", "live"}, {"moving", "move"},
};

// Language-profile training samples. Character trigrams of these texts form
// the reference distributions for detection.
inline constexpr std::string_view kEnglishSample = R"(
The vendor shipped the package yesterday and the buyer confirmed that the order arrived in good
condition. After the escrow period ended the market released the funds to the seller, who then
thanked everyone for the positive feedback. Many users on the forum discuss which shops are
trustworthy and which ones should be avoided. There is a long thread about shipping times, stealth
packaging, and the best way to protect your identity when you receive something through the mail.
Moderators warn new members that they must read the rules before posting, and anyone caught
scamming will be banned without warning. The administrator announced a new security update for
the website, including two factor authentication and a mirror list that will be updated every
week. Some people prefer to pay with bitcoin while others think that monero offers much better
privacy. A guide explains how to set up a wallet, how to verify a signed message, and how to check
that a link is genuine before you log in. The support team answers questions about refunds,
disputes, and lost parcels. Several sellers offer digital goods such as accounts, software
licenses, tutorials, and databases. Hosting providers advertise servers that accept anonymous
payments, and a search engine lists thousands of hidden services with short descriptions. This
community has existed for many years, although the original founders have left and new staff
took over the daily work. The news section reports on arrests, exit scams, and changes in the law.
You can download the latest version of the browser from the official page, and you should never
share your password with anyone. If you have a problem with your order, open a ticket and wait for
a reply from the staff instead of posting your complaint in public. Reputation matters more than
anything else here, because it shows how reliable a trader has been over time. Reviews describe
the quality of the product, the speed of delivery, and the communication with the vendor. The
marketplace charges a small fee on every transaction and keeps a reserve to cover disputes. Each
listing shows the price, the available quantity, the shipping options, and the countries where
the seller is willing to deliver. Members earn ranks by writing helpful posts and by completing
successful trades. The rules forbid spam, personal attacks, and the publication of private
information about other users. Would you like to know more about our services? Please contact us
through the encrypted messaging system and we will respond within a few hours. Thank you for your
patience while we improve the platform and fix the remaining bugs in the checkout process.
)";

inline constexpr std::string_view kGermanSample = R"(
Der Verkäufer hat das Paket gestern verschickt und der Käufer hat bestätigt, dass die Bestellung
in gutem Zustand angekommen ist. Nach dem Ende der Treuhandfrist hat der Marktplatz das Geld an
den Händler ausgezahlt, der sich dann bei allen für die positive Bewertung bedankt hat. Viele
Benutzer im Forum sprechen darüber, welche Läden vertrauenswürdig sind und welche man besser
meiden sollte. Es gibt einen langen Beitrag über Lieferzeiten, unauffällige Verpackung und die
beste Methode, um die eigene Identität zu schützen, wenn man etwas mit der Post bekommt. Die
Moderatoren warnen neue Mitglieder, dass sie zuerst die Regeln lesen müssen, und wer beim Betrug
erwischt wird, wird ohne Warnung gesperrt. Der Administrator hat eine neue Sicherheitsaktualisierung
für die Webseite angekündigt, einschließlich einer Anmeldung mit zwei Faktoren und einer Liste von
Spiegelseiten, die jede Woche aktualisiert wird. Manche Leute bezahlen lieber mit Bitcoin, während
andere glauben, dass Monero viel mehr Privatsphäre bietet. Eine Anleitung erklärt, wie man eine
Geldbörse einrichtet, wie man eine signierte Nachricht überprüft und wie man sicherstellt, dass
ein Link echt ist, bevor man sich anmeldet. Das Team beantwortet Fragen zu Rückerstattungen,
Streitfällen und verlorenen Sendungen. Mehrere Verkäufer bieten digitale Waren wie Konten,
Softwarelizenzen, Anleitungen und Datenbanken an. Die Gemeinschaft besteht seit vielen Jahren,
obwohl die ursprünglichen Gründer gegangen sind und neue Mitarbeiter die tägliche Arbeit übernommen
haben. Wenn Sie ein Problem mit Ihrer Bestellung haben, öffnen Sie bitte ein Ticket und warten Sie
auf eine Antwort, anstatt Ihre Beschwerde öffentlich zu schreiben. Der Ruf ist hier wichtiger als
alles andere, weil er zeigt, wie zuverlässig ein Händler über die Zeit gewesen ist. Jede Anzeige
zeigt den Preis, die verfügbare Menge, die Versandoptionen und die Länder, in die geliefert wird.
Vielen Dank für Ihre Geduld, während wir die Plattform verbessern und die restlichen Fehler beheben.
)";

inline constexpr std::string_view kFrenchSample = R"(
Le vendeur a expédié le colis hier et l'acheteur a confirmé que la commande est arrivée en bon
état. Après la fin de la période de séquestre, le marché a versé les fonds au vendeur, qui a
ensuite remercié tout le monde pour les avis positifs. Beaucoup d'utilisateurs du forum discutent
des boutiques qui sont dignes de confiance et de celles qu'il vaut mieux éviter. Il existe une
longue discussion sur les délais de livraison, l'emballage discret et la meilleure façon de
protéger son identité lorsqu'on reçoit quelque chose par la poste. Les modérateurs préviennent
les nouveaux membres qu'ils doivent lire les règles avant de publier, et toute personne surprise
en train d'escroquer sera bannie sans avertissement. L'administrateur a annoncé une nouvelle mise
à jour de sécurité pour le site, avec une authentification à deux facteurs et une liste de miroirs
qui sera mise à jour chaque semaine. Certaines personnes préfèrent payer en bitcoin tandis que
d'autres pensent que monero offre une bien meilleure confidentialité. Un guide explique comment
créer un portefeuille, comment vérifier un message signé et comment s'assurer qu'un lien est
authentique avant de se connecter. L'équipe répond aux questions sur les remboursements, les
litiges et les colis perdus. Plusieurs vendeurs proposent des biens numériques comme des comptes,
des licences de logiciels, des tutoriels et des bases de données. Cette communauté existe depuis
de nombreuses années, bien que les fondateurs soient partis et que la nouvelle équipe ait repris
le travail quotidien. Si vous avez un problème avec votre commande, ouvrez un ticket et attendez
une réponse au lieu de publier votre plainte en public. La réputation compte plus que tout le
reste, car elle montre la fiabilité d'un commerçant au fil du temps. Chaque annonce indique le
prix, la quantité disponible, les options de livraison et les pays où le vendeur accepte de livrer.
Merci pour votre patience pendant que nous améliorons la plateforme et corrigeons les erreurs.
)";

inline constexpr std::string_view kSpanishSample = R"(
El vendedor envió el paquete ayer y el comprador confirmó que el pedido llegó en buenas
condiciones. Después del periodo de custodia, el mercado liberó los fondos al vendedor, quien
luego agradeció a todos por los comentarios positivos. Muchos usuarios del foro hablan sobre
cuáles tiendas son confiables y cuáles conviene evitar. Hay un hilo muy largo sobre los tiempos
de envío, el empaque discreto y la mejor manera de proteger tu identidad cuando recibes algo por
correo. Los moderadores advierten a los nuevos miembros que deben leer las reglas antes de
publicar, y cualquiera que sea descubierto estafando será expulsado sin aviso. El administrador
anunció una nueva actualización de seguridad para el sitio, que incluye autenticación de dos
factores y una lista de espejos que se actualizará cada semana. Algunas personas prefieren pagar
con bitcoin mientras que otras piensan que monero ofrece mucha más privacidad. Una guía explica
cómo crear una billetera, cómo verificar un mensaje firmado y cómo comprobar que un enlace es
auténtico antes de iniciar sesión. El equipo de soporte responde preguntas sobre reembolsos,
disputas y paquetes perdidos. Varios vendedores ofrecen productos digitales como cuentas,
licencias de programas, tutoriales y bases de datos. Esta comunidad existe desde hace muchos años,
aunque los fundadores originales se fueron y un nuevo equipo asumió el trabajo diario. Si tienes
un problema con tu pedido, abre un ticket y espera la respuesta del equipo en lugar de publicar tu
queja en público. La reputación importa más que cualquier otra cosa, porque muestra qué tan
confiable ha sido un comerciante con el tiempo. Cada anuncio muestra el precio, la cantidad
disponible, las opciones de envío y los países donde el vendedor está dispuesto a entregar.
Gracias por tu paciencia mientras mejoramos la plataforma y corregimos los errores pendientes.
)";

inline constexpr std::string_view kRussianTranslitSample = R"(
Prodavets otpravil posylku vchera, i pokupatel podtverdil, chto zakaz prishel v khoroshem
sostoyanii. Posle okonchaniya sroka garantii magazin perevel dengi prodavtsu, kotoryy potom
poblagodaril vsekh za polozhitelnye otzyvy. Mnogie polzovateli foruma obsuzhdayut, kakim
magazinam mozhno doveryat, a kakikh luchshe izbegat. Est dlinnaya tema o srokakh dostavki,
nezametnoy upakovke i o tom, kak luchshe zashchitit svoyu lichnost, kogda poluchaesh chto-to po
pochte. Moderatory preduprezhdayut novykh uchastnikov, chto nuzhno snachala prochitat pravila, a
kazhdyy, kto budet poyman na moshennichestve, budet zablokirovan bez preduprezhdeniya.
Administrator obyavil novoe obnovlenie bezopasnosti dlya sayta, vklyuchaya dvukhfaktornuyu
autentifikatsiyu i spisok zerkal, kotoryy budet obnovlyatsya kazhduyu nedelyu. Nekotorye lyudi
predpochitayut platit bitkoinom, a drugie schitayut, chto monero daet gorazdo bolshe
konfidentsialnosti. Rukovodstvo obyasnyaet, kak sozdat koshelek, kak proverit podpisannoe
soobshchenie i kak ubeditsya, chto ssylka nastoyashchaya, prezhde chem voyti. Komanda podderzhki
otvechaet na voprosy o vozvratakh, sporakh i poteryannykh posylkakh. Neskolko prodavtsov
predlagayut tsifrovye tovary, takie kak akkaunty, litsenzii na programmy, uroki i bazy dannykh.
Eto soobshchestvo sushchestvuet uzhe mnogo let, khotya osnovateli ushli i novaya komanda vzyala na
sebya ezhednevnuyu rabotu. Esli u vas problema s zakazom, otkroyte tiket i podozhdite otveta
vmesto togo, chtoby zhalovatsya publichno. Reputatsiya zdes vazhnee vsego, potomu chto ona
pokazyvaet, naskolko nadezhnym byl torgovets so vremenem. Spasibo za vashe terpenie, poka my
uluchshaem platformu i ispravlyaem ostavshiesya oshibki.
)";

}  // namespace darkspan::textnorm::data
